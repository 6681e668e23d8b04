#include "twistk/koszul.hpp"

#include <algorithm>

namespace twistk {

namespace {

// tau-relation in T(A_1 (+) B_1) for one basis tensor: (b-word)(a-word) minus
// the lift of tau(b (x) a). B-generator indices are shifted past A's.
NcPoly tau_relation(const TwistingMap& tw, int j, int i, int bi, int ai) {
    const auto& A = *tw.algA();
    const auto& B = *tw.algB();
    const int ga = A.generator_count();
    auto shift = [&](const Word& w) {
        Word out = w;
        for (auto& l : out) l = static_cast<uint8_t>(l + ga);
        return out;
    };
    std::vector<std::pair<Word, Scalar>> terms;
    {
        Word w = shift(B.basis(j)[bi]);
        const Word& aw = A.basis(i)[ai];
        w.insert(w.end(), aw.begin(), aw.end());
        terms.emplace_back(std::move(w), Scalar::one(tw.field()));
    }
    const auto& kb = tw.kunneth(i + j);
    for (const auto& [idx, c] : tw.block_column(j, i, bi, ai).terms) {
        auto e = kb.decode(idx);
        Word w = A.basis(e.p)[e.ai];
        Word bw = shift(B.basis(e.q)[e.bi]);
        w.insert(w.end(), bw.begin(), bw.end());
        terms.emplace_back(std::move(w), -c);
    }
    return NcPoly::from_terms(i + j, std::move(terms));
}

Presentation combined_presentation(const TwistingMap& tw, int tau_degree_cap, int N,
                                   std::vector<NcPoly>* relA_out, std::vector<NcPoly>* relB_out,
                                   std::map<int, std::vector<NcPoly>>* tau_out) {
    const auto& A = *tw.algA();
    const auto& B = *tw.algB();
    const int ga = A.generator_count();

    Presentation p;
    p.field = tw.field();
    p.gens.names = A.presentation().gens.names;
    for (const auto& n : B.presentation().gens.names) {
        if (p.gens.index(n) >= 0)
            throw StructuralError("product presentation requires distinct generator names (clash: " + n + ")");
        p.gens.names.push_back(n);
    }

    for (const auto& r : A.presentation().relations) {
        p.relations.push_back(r);
        if (relA_out) relA_out->push_back(r);
    }
    for (const auto& r : B.presentation().relations) {
        std::vector<std::pair<Word, Scalar>> terms;
        for (const auto& [w, c] : r.terms) {
            Word sw = w;
            for (auto& l : sw) l = static_cast<uint8_t>(l + ga);
            terms.emplace_back(std::move(sw), c);
        }
        NcPoly lifted = NcPoly::from_terms(r.degree, std::move(terms));
        p.relations.push_back(lifted);
        if (relB_out) relB_out->push_back(lifted);
    }
    for (int d = 2; d <= std::min(tau_degree_cap, N); ++d)
        for (int j = 1; j <= d - 1; ++j) {
            int i = d - j;
            for (int bi = 0; bi < B.dim(j); ++bi)
                for (int ai = 0; ai < A.dim(i); ++ai) {
                    NcPoly r = tau_relation(tw, j, i, bi, ai);
                    if (r.is_zero()) continue;
                    p.relations.push_back(r);
                    if (tau_out) (*tau_out)[d].push_back(r);
                }
        }
    return p;
}

std::vector<long long> kunneth_dims(const TwistingMap& tw, int N) {
    std::vector<long long> out(N + 1, 0);
    for (int n = 0; n <= N; ++n)
        for (int p = 0; p <= n; ++p) out[n] += static_cast<long long>(tw.algA()->dim(p)) * tw.algB()->dim(n - p);
    return out;
}

void require_verified(const TwistingMap& tw, int N) {
    Verdict v = verify_twisting_to_degree(tw, N);
    if (!v.ok)
        throw PreconditionError("table is not twisting to degree " + std::to_string(N) + ": " +
                                v.failure->describe(tw));
}

}  // namespace

ProductPresentation twisted_product_presentation(const TwistingMap& tw, int N) {
    if (N > tw.bound()) throw BoundError("product presentation degree exceeds table bound");
    require_verified(tw, N);

    ProductPresentation pp;
    pp.combined = combined_presentation(tw, N, N, &pp.relA, &pp.relB, &pp.tau_relations);
    auto alg = TruncatedAlgebra::truncate(pp.combined, N);
    pp.dims = alg->hilbert();
    auto expected = kunneth_dims(tw, N);
    for (int n = 0; n <= N; ++n)
        if (pp.dims[n] != expected[n])
            throw InternalCheckError("Hilbert mismatch in degree " + std::to_string(n) +
                                     ": product dims " + std::to_string(pp.dims[n]) + " vs Kunneth " +
                                     std::to_string(expected[n]) + " (table is not a twisting map)");
    pp.minimal_degrees = minimal_generator_degrees(pp.combined, N);
    return pp;
}

TauQuadratic tau_quadratic_check(const TwistingMap& tw, int N) {
    if (N > tw.bound()) throw BoundError("tau-quadratic check degree exceeds table bound");
    require_verified(tw, N);
    Presentation quad = combined_presentation(tw, /*tau_degree_cap=*/2, N, nullptr, nullptr, nullptr);
    auto alg = TruncatedAlgebra::truncate(quad, N);
    auto expected = kunneth_dims(tw, N);
    for (int n = 0; n <= N; ++n) {
        if (alg->dim(n) != expected[n]) return TauQuadratic{false, n};
    }
    return TauQuadratic{true, 0};
}

Presentation quadratic_dual(const Presentation& p) {
    p.validate();
    if (!p.is_quadratic()) throw PreconditionError("quadratic_dual requires a quadratic presentation");
    const int g = p.gens.count();
    const FieldSpec& f = p.field;
    ExactMatrix rel(static_cast<int>(p.relations.size()), g * g, f);
    for (int r = 0; r < static_cast<int>(p.relations.size()); ++r)
        for (const auto& [w, c] : p.relations[r].terms) rel.at(r, w[0] * g + w[1]) = c;
    auto rk = rank_and_kernel(rel);
    Presentation dual;
    dual.gens = p.gens;
    dual.field = f;
    for (const auto& v : rk.kernel) {
        std::vector<std::pair<Word, Scalar>> terms;
        for (int i = 0; i < g * g; ++i)
            if (!v[i].is_zero())
                terms.emplace_back(Word{static_cast<uint8_t>(i / g), static_cast<uint8_t>(i % g)}, v[i]);
        dual.relations.push_back(NcPoly::from_terms(2, std::move(terms)));
    }
    return dual;
}

bool hilbert_koszul_identity(const Presentation& p, int N) {
    auto ha = TruncatedAlgebra::truncate(p, N)->hilbert();
    auto hd = TruncatedAlgebra::truncate(quadratic_dual(p), N)->hilbert();
    const FieldSpec& f = p.field;
    for (int n = 0; n <= N; ++n) {
        Scalar acc = Scalar::zero(f);
        for (int k = 0; k <= n; ++k) {
            Scalar term = Scalar::from_int(f, ha[k]) * Scalar::from_int(f, hd[n - k]);
            if ((n - k) % 2 == 1) term = -term;
            acc += term;
        }
        if (n == 0 ? !acc.is_one() : !acc.is_zero()) return false;
    }
    return true;
}

long long TorTable::at(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
}

bool TorTable::diagonal_through(int jm) const {
    for (const auto& [key, dim] : entries)
        if (key.second <= jm && key.first != key.second && dim != 0) return false;
    return true;
}

namespace {

// kernel of a graded linear map given by sparse columns; canonical reduced
// echelon kernel rows over the domain coordinates
struct SparseKernel {
    int rank = 0;
    std::vector<SparseVec> kernel;
};

SparseKernel sparse_kernel(const std::vector<SparseVec>& cols, const FieldSpec& f, bool want_kernel) {
    const int dom = static_cast<int>(cols.size());
    // transpose into rows over domain coordinates
    std::vector<SparseVec> rows;  // lazily sized
    std::map<int, SparseVec> row_map;
    for (int c = 0; c < dom; ++c)
        for (const auto& [r, v] : cols[c].terms) {
            auto [it, fresh] = row_map.try_emplace(r, SparseVec(dom));
            it->second.terms.emplace_back(c, v);  // c increases monotonically
        }
    SparseRref rref(dom, /*prefer_last=*/false);
    for (auto& [r, row] : row_map) rref.insert(std::move(row));
    SparseKernel out;
    out.rank = rref.rank();
    if (!want_kernel) return out;
    rref.finalize();
    for (int c = 0; c < dom; ++c) {
        if (rref.has_pivot(c)) continue;
        SparseVec v(dom);
        v.add_term(c, Scalar::one(f));
        for (const auto& [pc, row] : rref.rows()) {
            const Scalar* coeff = row.at(c);
            if (coeff) v.add_term(pc, -*coeff);
        }
        out.kernel.push_back(std::move(v));
    }
    return out;
}

// compositions of n into k positive parts, lexicographic
void compositions(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (k == 1) {
        if (n >= 1) {
            cur.push_back(n);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int first = 1; first + (k - 1) <= n; ++first) {
        cur.push_back(first);
        compositions(n - first, k - 1, cur, out);
        cur.pop_back();
    }
}

struct BarSpace {
    std::vector<std::vector<int>> comps;
    std::vector<long long> offsets;
    long long dim = 0;
    std::map<std::vector<int>, int> comp_index;
};

BarSpace bar_space(const TruncatedAlgebra& A, int i, int j) {
    BarSpace bs;
    std::vector<int> cur;
    compositions(j, i, cur, bs.comps);
    for (int c = 0; c < static_cast<int>(bs.comps.size()); ++c) {
        bs.comp_index[bs.comps[c]] = c;
        bs.offsets.push_back(bs.dim);
        long long block = 1;
        for (int part : bs.comps[c]) block *= A.dim(part);
        bs.dim += block;
    }
    return bs;
}

long long bar_index(const TruncatedAlgebra& A, const BarSpace& bs, const std::vector<int>& comp,
                    const std::vector<int>& idxs) {
    long long off = bs.offsets[bs.comp_index.at(comp)];
    long long v = 0;
    for (size_t k = 0; k < comp.size(); ++k) v = v * A.dim(comp[k]) + idxs[k];
    return off + v;
}

}  // namespace

TorTable bar_tor_table(const AlgebraPtr& alg, int i_max, int j_max) {
    const auto& A = *alg;
    if (j_max > A.bound()) throw BoundError("bar table internal degree exceeds truncation bound");
    if (i_max > j_max) throw PreconditionError("bar table needs i_max <= j_max");
    const FieldSpec& f = A.field();

    TorTable t;
    t.i_max = i_max;
    t.j_max = j_max;
    t.entries[{0, 0}] = 1;

    for (int j = 1; j <= j_max; ++j) {
        // ranks of d_i : Bar_i -> Bar_{i-1} in internal degree j, i = 1..i_max+1
        std::vector<long long> dims(std::min(i_max + 1, j) + 1, 0);
        std::vector<long long> ranks(std::min(i_max + 1, j) + 2, 0);
        std::vector<BarSpace> spaces(std::min(i_max + 1, j) + 1);
        for (int i = 1; i <= std::min(i_max + 1, j); ++i) {
            spaces[i] = bar_space(A, i, j);
            dims[i] = spaces[i].dim;
        }
        for (int i = 2; i <= std::min(i_max + 1, j); ++i) {
            const BarSpace& dom = spaces[i];
            const BarSpace& tgt = spaces[i - 1];
            std::vector<SparseVec> cols;
            cols.reserve(dom.dim);
            for (const auto& comp : dom.comps) {
                long long block = 1;
                for (int part : comp) block *= A.dim(part);
                if (block == 0) continue;
                std::vector<int> idxs(comp.size(), 0);
                bool done = false;
                while (!done) {
                    SparseVec col(static_cast<int>(tgt.dim));
                    for (size_t k = 0; k + 1 < comp.size(); ++k) {
                        std::vector<int> ncomp;
                        for (size_t s = 0; s < comp.size(); ++s) {
                            if (s == k) {
                                ncomp.push_back(comp[k] + comp[k + 1]);
                                ++s;
                            } else {
                                ncomp.push_back(comp[s]);
                            }
                        }
                        const SparseVec& prod = A.multiply_basis(comp[k], idxs[k], comp[k + 1], idxs[k + 1]);
                        Scalar sign = (k % 2 == 0) ? Scalar::one(f) : -Scalar::one(f);
                        std::vector<int> nidx;
                        for (size_t s = 0; s < comp.size(); ++s)
                            if (s != k && s != k + 1) nidx.push_back(idxs[s]);
                        for (const auto& [pi, pc] : prod.terms) {
                            std::vector<int> full;
                            for (size_t s = 0, t2 = 0; s < ncomp.size(); ++s) {
                                if (s == k)
                                    full.push_back(pi);
                                else
                                    full.push_back(nidx[t2++]);
                            }
                            col.add_term(static_cast<int>(bar_index(A, tgt, ncomp, full)), pc * sign);
                        }
                    }
                    cols.push_back(std::move(col));
                    // advance mixed-radix index
                    done = true;
                    for (int k = static_cast<int>(comp.size()) - 1; k >= 0; --k) {
                        if (++idxs[k] < A.dim(comp[k])) {
                            done = false;
                            break;
                        }
                        idxs[k] = 0;
                    }
                }
            }
            ranks[i] = sparse_kernel(cols, f, /*want_kernel=*/false).rank;
        }
        for (int i = 1; i <= std::min(i_max, j); ++i) {
            long long h = dims[i] - ranks[i] - (i + 1 < static_cast<int>(ranks.size()) ? ranks[i + 1] : 0);
            if (h != 0) t.entries[{i, j}] = h;
        }
    }
    return t;
}

namespace {

// basis of (A (x) W)_j where W has one generator per entry of wdeg
struct ModuleBasis {
    std::vector<int> offsets;  // per generator
    int dim = 0;
};

ModuleBasis module_basis(const TruncatedAlgebra& A, const std::vector<int>& wdeg, int j) {
    ModuleBasis mb;
    for (int w = 0; w < static_cast<int>(wdeg.size()); ++w) {
        mb.offsets.push_back(mb.dim);
        int p = j - wdeg[w];
        if (p >= 0) mb.dim += A.dim(p);
    }
    return mb;
}

}  // namespace

TorTable minimal_tor_table(const AlgebraPtr& alg, int i_max, int j_max) {
    const auto& A = *alg;
    if (j_max > A.bound()) throw BoundError("Tor internal degree exceeds truncation bound");
    if (i_max > j_max) throw PreconditionError("minimal Tor table needs i_max <= j_max");
    const FieldSpec& f = A.field();

    TorTable t;
    t.i_max = i_max;
    t.j_max = j_max;
    t.entries[{0, 0}] = 1;

    // step i=1: free module on A_1, d_1(x) = x in A
    std::vector<int> wdeg(A.dim(1), 1);
    // images of the current step's generators inside (A (x) W_{i-1}); for i=1
    // the previous module is A itself (one generator of degree 0)
    std::vector<int> prev_wdeg = {0};
    std::vector<std::pair<int, SparseVec>> gens;  // (degree, image in (A (x) W_{i-1})_degree)
    for (int g = 0; g < A.dim(1); ++g) gens.emplace_back(1, SparseVec::unit(A.dim(1), g, Scalar::one(f)));
    if (i_max >= 1 && j_max >= 1 && A.dim(1) > 0) t.entries[{1, 1}] = A.dim(1);

    for (int i = 1; i < i_max; ++i) {
        // kernel of d_i : (A (x) W_i)_j -> (A (x) W_{i-1})_j for all j, then the
        // minimal generators of the kernel module become W_{i+1}
        std::vector<int> cur_wdeg;
        for (const auto& [d, img] : gens) cur_wdeg.push_back(d);

        std::vector<std::vector<SparseVec>> kernels(j_max + 1);
        for (int j = 0; j <= j_max; ++j) {
            ModuleBasis dom = module_basis(A, cur_wdeg, j);
            if (dom.dim == 0) continue;
            ModuleBasis tgt = module_basis(A, prev_wdeg, j);
            std::vector<SparseVec> cols(dom.dim, SparseVec(tgt.dim));
            for (int w = 0; w < static_cast<int>(cur_wdeg.size()); ++w) {
                int p = j - cur_wdeg[w];
                if (p < 0) continue;
                for (int ai = 0; ai < A.dim(p); ++ai) {
                    // a * d(w): module action degree by degree
                    SparseVec col(tgt.dim);
                    const SparseVec& img = gens[w].second;
                    ModuleBasis img_mb = module_basis(A, prev_wdeg, cur_wdeg[w]);
                    for (const auto& [idx, c] : img.terms) {
                        // locate (w', a') inside the image coordinates
                        int wp = 0;
                        while (wp + 1 < static_cast<int>(prev_wdeg.size()) && img_mb.offsets[wp + 1] <= idx) ++wp;
                        int api = idx - img_mb.offsets[wp];
                        int pdeg = cur_wdeg[w] - prev_wdeg[wp];
                        const SparseVec& prod = A.multiply_basis(p, ai, pdeg, api);
                        for (const auto& [ri, rc] : prod.terms)
                            col.add_term(tgt.offsets[wp] + ri, c * rc);
                    }
                    cols[dom.offsets[w] + ai] = std::move(col);
                }
            }
            kernels[j] = sparse_kernel(cols, f, /*want_kernel=*/true).kernel;
        }

        // minimal generators: complement of A_1 * Z_{j-1} inside Z_j
        std::vector<std::pair<int, SparseVec>> next_gens;
        for (int j = 0; j <= j_max; ++j) {
            if (kernels[j].empty()) continue;
            ModuleBasis mb_j = module_basis(A, cur_wdeg, j);
            SparseRref span(mb_j.dim, /*prefer_last=*/false);
            if (j >= 1 && !kernels[j - 1].empty()) {
                ModuleBasis mb_prev = module_basis(A, cur_wdeg, j - 1);
                for (int g = 0; g < A.dim(1); ++g)
                    for (const auto& z : kernels[j - 1]) {
                        SparseVec gz(mb_j.dim);
                        for (const auto& [idx, c] : z.terms) {
                            int wp = 0;
                            while (wp + 1 < static_cast<int>(cur_wdeg.size()) && mb_prev.offsets[wp + 1] <= idx)
                                ++wp;
                            int api = idx - mb_prev.offsets[wp];
                            int pdeg = j - 1 - cur_wdeg[wp];
                            const SparseVec& prod = A.multiply_basis(1, g, pdeg, api);
                            for (const auto& [ri, rc] : prod.terms) gz.add_term(mb_j.offsets[wp] + ri, c * rc);
                        }
                        span.insert(std::move(gz));
                    }
            }
            int count = 0;
            for (const auto& z : kernels[j]) {
                SparseVec red = span.reduce(z);
                if (red.is_zero()) continue;
                span.insert(red);
                next_gens.emplace_back(j, red);
                ++count;
            }
            if (count > 0) t.entries[{i + 1, j}] = count;
        }
        prev_wdeg = std::move(cur_wdeg);
        gens = std::move(next_gens);
        if (gens.empty()) break;  // resolution has terminated within the window
    }
    return t;
}

std::string KoszulVerdict::str() const {
    switch (kind) {
        case Kind::koszul_to_degree:
            return "koszul_to_degree(" + std::to_string(degree) + ")";
        case Kind::not_quadratic:
            return "not_quadratic(" + std::to_string(degree) + ")";
        case Kind::not_koszul:
            return "not_koszul(" + std::to_string(witness.first) + "," + std::to_string(witness.second) + ")";
    }
    return "";
}

KoszulVerdict koszul_verdict(const AlgebraPtr& alg, int N) {
    KoszulVerdict v;
    auto mindeg = minimal_generator_degrees(alg->presentation(), N);
    for (const auto& [d, c] : mindeg) {
        if (d >= 3 && c > 0) {
            v.kind = KoszulVerdict::Kind::not_quadratic;
            v.degree = d;
            return v;
        }
    }
    TorTable t = minimal_tor_table(alg, N, N);
    for (int j = 0; j <= N; ++j)
        for (int i = 0; i <= N; ++i) {
            if (i == j) continue;
            if (t.at(i, j) != 0) {
                v.kind = KoszulVerdict::Kind::not_koszul;
                v.witness = {i, j};
                v.tor = std::move(t);
                return v;
            }
        }
    v.kind = KoszulVerdict::Kind::koszul_to_degree;
    v.degree = N;
    v.tor = std::move(t);
    return v;
}

SeparableHypotheses separable_hypotheses_check(const TwistingMap& tw, const SeparableSplit& split) {
    const auto& A = *tw.algA();
    const auto& B = *tw.algB();
    if (tw.bound() < 3) throw PreconditionError("separable hypotheses need the table to degree 3");
    if (!A.presentation().is_quadratic() || !B.presentation().is_quadratic())
        throw PreconditionError("separable hypotheses require quadratic components");
    split.validate(B.dim(1));

    SeparableHypotheses out;
    const auto& gnA = A.presentation().gens.names;
    const auto& gnB = B.presentation().gens.names;

    // condition (1): over b in B_1 and rho in I_2 (A's quadratic relations)
    auto I2 = quadratic_part(A.presentation()).relations;
    const auto& kb3 = tw.kunneth(3);
    for (int bi = 0; bi < B.dim(1) && out.condition1; ++bi) {
        for (size_t ri = 0; ri < I2.size(); ++ri) {
            SparseVec acc(A.dim(2) * B.dim(1));  // component in A_2 (x) B_1
            for (const auto& [w, c] : I2[ri].terms) {
                int u = w[0], vv = w[1];
                SparseVec tb = tw.tB(1, 1, bi, u);  // in B_2
                for (const auto& [b2, cb] : tb.terms) {
                    for (const auto& [idx, ct] : tw.apply_basis(2, 1, b2, vv).terms) {
                        auto e = kb3.decode(idx);
                        if (e.p == 2) acc.add_term(e.ai * B.dim(1) + e.bi, c * cb * ct);
                    }
                }
            }
            if (!acc.is_zero()) {
                out.condition1 = false;
                out.witness1 = gnB[bi] + " (x) (" + I2[ri].str(gnA) + ")";
                break;
            }
        }
    }

    // condition (2): over rho in J_2 (B's quadratic relations) and a in A_1
    auto J2 = quadratic_part(B.presentation()).relations;
    for (size_t ri = 0; ri < J2.size() && out.condition2; ++ri) {
        for (int ai = 0; ai < A.dim(1); ++ai) {
            SparseVec acc(A.dim(1) * B.dim(2));  // component in A_1 (x) B_2
            for (const auto& [w, c] : J2[ri].terms) {
                int u = w[0], vv = w[1];
                SparseVec ta = tw.tA(1, 1, vv, ai);  // in A_2
                for (const auto& [a2, ca] : ta.terms) {
                    for (const auto& [idx, ct] : tw.apply_basis(1, 2, u, a2).terms) {
                        auto e = kb3.decode(idx);
                        if (e.p == 1) acc.add_term(e.ai * B.dim(2) + e.bi, c * ca * ct);
                    }
                }
            }
            if (!acc.is_zero()) {
                out.condition2 = false;
                out.witness2 = "(" + J2[ri].str(gnB) + ") (x) " + gnA[ai];
                break;
            }
        }
    }
    return out;
}

}  // namespace twistk
