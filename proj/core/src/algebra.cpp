#include "twistk/algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace twistk {

std::string word_str(const Word& w, const std::vector<std::string>& gens) {
    if (w.empty()) return "1";
    std::string out;
    size_t i = 0;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty()) out += "*";
        out += gens[w[i]];
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

NcPoly NcPoly::from_terms(int degree, std::vector<std::pair<Word, Scalar>> terms) {
    for (const auto& [w, c] : terms) {
        if (static_cast<int>(w.size()) != degree)
            throw StructuralError("inhomogeneous term: word of length " + std::to_string(w.size()) +
                                  " in degree-" + std::to_string(degree) + " polynomial");
    }
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    NcPoly p;
    p.degree = degree;
    for (auto& [w, c] : terms) {
        if (c.is_zero()) continue;
        if (!p.terms.empty() && p.terms.back().first == w) {
            p.terms.back().second += c;
            if (p.terms.back().second.is_zero()) p.terms.pop_back();
        } else {
            p.terms.emplace_back(std::move(w), std::move(c));
        }
    }
    return p;
}

std::string NcPoly::str(const std::vector<std::string>& gens) const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms) {
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (neg) cs = cs.substr(1);
        if (cs == "1" && !w.empty())
            out += word_str(w, gens);
        else if (w.empty())
            out += cs;
        else
            out += cs + "*" + word_str(w, gens);
    }
    return out;
}

int GeneratorSet::index(const std::string& name) const {
    for (int i = 0; i < count(); ++i)
        if (names[i] == name) return i;
    return -1;
}

void GeneratorSet::validate() const {
    if (names.empty()) throw StructuralError("generator set must be nonempty");
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) throw StructuralError("empty generator name");
        if (!seen.insert(n).second) throw StructuralError("duplicate generator name: " + n);
    }
}

void Presentation::validate() const {
    gens.validate();
    if (gens.count() > 255) throw StructuralError("too many generators");
    for (const auto& r : relations) {
        if (r.is_zero()) throw StructuralError("zero relation");
        if (r.degree < 2) throw StructuralError("relation of degree < 2");
        for (const auto& [w, c] : r.terms) {
            if (static_cast<int>(w.size()) != r.degree) throw StructuralError("inhomogeneous relation");
            for (uint8_t l : w)
                if (l >= gens.count()) throw StructuralError("relation uses unknown generator index");
            if (c.field() != field) throw StructuralError("relation coefficient in wrong field");
        }
    }
}

bool Presentation::is_quadratic() const {
    for (const auto& r : relations)
        if (r.degree != 2) return false;
    return true;
}

Presentation free_presentation(std::vector<std::string> names, FieldSpec f) {
    Presentation p;
    p.gens.names = std::move(names);
    p.field = std::move(f);
    p.validate();
    return p;
}

void TruncatedAlgebra::check_degree(int n) const {
    if (n < 0 || n > bound_)
        throw BoundError("degree " + std::to_string(n) + " outside truncation bound " + std::to_string(bound_));
}

int TruncatedAlgebra::dim(int n) const {
    check_degree(n);
    return static_cast<int>(basis_[n].size());
}

long long TruncatedAlgebra::ideal_dim(int n) const {
    check_degree(n);
    return ideal_dim_[n];
}

std::vector<long long> TruncatedAlgebra::hilbert() const {
    std::vector<long long> h;
    for (int n = 0; n <= bound_; ++n) h.push_back(dim(n));
    return h;
}

const std::vector<Word>& TruncatedAlgebra::basis(int n) const {
    check_degree(n);
    return basis_[n];
}

int TruncatedAlgebra::basis_index(int n, const Word& w) const {
    check_degree(n);
    auto it = index_[n].find(w);
    return it == index_[n].end() ? -1 : it->second;
}

const SparseVec& TruncatedAlgebra::lmul_letter(int g, int n, int idx) const {
    check_degree(n + 1);
    return lmul_[n][g][idx];
}

const SparseVec& TruncatedAlgebra::rmul_letter(int g, int n, int idx) const {
    check_degree(n + 1);
    return rmul_[n][g][idx];
}

SparseVec TruncatedAlgebra::lmul_letter_vec(int g, int n, const SparseVec& v) const {
    check_degree(n + 1);
    SparseVec out(dim(n + 1));
    for (const auto& [i, c] : v.terms) out.add_scaled(lmul_[n][g][i], c);
    return out;
}

SparseVec TruncatedAlgebra::rmul_letter_vec(int g, int n, const SparseVec& v) const {
    check_degree(n + 1);
    SparseVec out(dim(n + 1));
    for (const auto& [i, c] : v.terms) out.add_scaled(rmul_[n][g][i], c);
    return out;
}

SparseVec TruncatedAlgebra::normal_form(const Word& w) const {
    int n = static_cast<int>(w.size());
    check_degree(n);
    if (n == 0) return SparseVec::unit(1, 0, Scalar::one(field()));
    for (uint8_t l : w)
        if (l >= generator_count()) throw StructuralError("word uses unknown generator index");
    SparseVec v = SparseVec::unit(dim(1), w[n - 1], Scalar::one(field()));
    int deg = 1;
    for (int k = n - 2; k >= 0; --k) {
        v = lmul_letter_vec(w[k], deg, v);
        ++deg;
    }
    return v;
}

SparseVec TruncatedAlgebra::normal_form(const NcPoly& p) const {
    check_degree(p.degree);
    SparseVec out(dim(p.degree));
    for (const auto& [w, c] : p.terms) out.add_scaled(normal_form(w), c);
    return out;
}

SparseVec TruncatedAlgebra::multiply(int i, const SparseVec& u, int j, const SparseVec& v) const {
    if (i < 0 || j < 0 || i + j > bound_) throw BoundError("product degree exceeds truncation bound");
    if (u.dim != dim(i) || v.dim != dim(j)) throw StructuralError("multiply: coordinate dimension mismatch");
    SparseVec out(dim(i + j));
    if (j == 0) {
        if (!v.terms.empty()) {
            out = u;
            out.scale(v.terms[0].second);
        }
        return out;
    }
    if (i == 0) {
        if (!u.terms.empty()) {
            out = v;
            out.scale(u.terms[0].second);
        }
        return out;
    }
    for (const auto& [bi, c] : v.terms) {
        // fold the right factor's normal word onto u letter by letter
        const Word& w = basis_[j][bi];
        SparseVec acc = u;
        int deg = i;
        for (uint8_t l : w) {
            acc = rmul_letter_vec(l, deg, acc);
            ++deg;
        }
        out.add_scaled(acc, c);
    }
    return out;
}

const SparseVec& TruncatedAlgebra::multiply_basis(int i, int ai, int j, int aj) const {
    if (i + j > bound_) throw BoundError("product degree exceeds truncation bound");
    std::lock_guard<std::mutex> lock(mul_mutex_);
    auto key = std::make_pair(i, j);
    auto it = mul_cache_.find(key);
    if (it == mul_cache_.end()) {
        std::vector<SparseVec> block;
        block.reserve(static_cast<size_t>(dim(i)) * dim(j));
        for (int a = 0; a < dim(i); ++a) {
            SparseVec ea = SparseVec::unit(dim(i), a, Scalar::one(field()));
            for (int b = 0; b < dim(j); ++b) {
                SparseVec eb = SparseVec::unit(dim(j), b, Scalar::one(field()));
                block.push_back(multiply(i, ea, j, eb));
            }
        }
        it = mul_cache_.emplace(key, std::move(block)).first;
    }
    return it->second[static_cast<size_t>(ai) * dim(j) + aj];
}

AlgebraPtr TruncatedAlgebra::truncate(Presentation p, int bound) {
    p.validate();
    if (bound < 2) throw PreconditionError("truncation bound must be at least 2");

    auto alg = std::shared_ptr<TruncatedAlgebra>(new TruncatedAlgebra());
    alg->pres_ = std::move(p);
    alg->bound_ = bound;
    const int g = alg->pres_.gens.count();
    const FieldSpec& f = alg->pres_.field;

    alg->basis_.resize(bound + 1);
    alg->index_.resize(bound + 1);
    alg->ideal_dim_.assign(bound + 1, 0);
    alg->lmul_.resize(bound);
    alg->rmul_.resize(bound);

    alg->basis_[0] = {Word{}};
    alg->index_[0][Word{}] = 0;
    for (int x = 0; x < g; ++x) {
        alg->basis_[1].push_back(Word{static_cast<uint8_t>(x)});
        alg->index_[1][alg->basis_[1].back()] = x;
    }

    // degree 0 -> 1 letter actions are the unit embeddings
    alg->lmul_[0].assign(g, {});
    alg->rmul_[0].assign(g, {});
    for (int x = 0; x < g; ++x) {
        alg->lmul_[0][x] = {SparseVec::unit(g, x, Scalar::one(f))};
        alg->rmul_[0][x] = {SparseVec::unit(g, x, Scalar::one(f))};
    }

    for (int n = 2; n <= bound; ++n) {
        const int dim_prev = static_cast<int>(alg->basis_[n - 1].size());
        const int cand = g * dim_prev;  // candidate words x*w over V (x) A_{n-1}

        // Ideal contribution in the candidate coordinates. Components of
        // T_a * r * T_b with a >= 1 vanish here, so it suffices to span the
        // images of r * (normal word) over relations r of each degree <= n.
        SparseRref rref(cand, /*prefer_last=*/true);
        for (const auto& r : alg->pres_.relations) {
            int d = r.degree;
            if (d > n) continue;
            int wb = n - d;
            for (int wi = 0; wi < static_cast<int>(alg->basis_[wb].size()); ++wi) {
                SparseVec row(cand);
                for (const auto& [m, c] : r.terms) {
                    // first letter of m stays in V; the rest acts on the basis word
                    SparseVec tail = SparseVec::unit(static_cast<int>(alg->basis_[wb].size()), wi, Scalar::one(f));
                    int deg = wb;
                    for (int k = d - 1; k >= 1; --k) {
                        tail = alg->lmul_letter_vec(m[k], deg, tail);
                        ++deg;
                    }
                    for (const auto& [ti, tc] : tail.terms) row.add_term(m[0] * dim_prev + ti, tc * c);
                }
                rref.insert(std::move(row));
            }
        }
        rref.finalize();

        alg->ideal_dim_[n] = g * alg->ideal_dim_[n - 1] + rref.rank();

        // normal words: non-pivot candidates, in degree-lexicographic order
        std::vector<int> new_index(cand, -1);
        for (int x = 0; x < g; ++x) {
            for (int wi = 0; wi < dim_prev; ++wi) {
                int ci = x * dim_prev + wi;
                if (rref.has_pivot(ci)) continue;
                Word w;
                w.reserve(n);
                w.push_back(static_cast<uint8_t>(x));
                const Word& tail = alg->basis_[n - 1][wi];
                w.insert(w.end(), tail.begin(), tail.end());
                new_index[ci] = static_cast<int>(alg->basis_[n].size());
                alg->index_[n][w] = new_index[ci];
                alg->basis_[n].push_back(std::move(w));
            }
        }
        const int dim_n = static_cast<int>(alg->basis_[n].size());

        // left letter actions A_{n-1} -> A_n: reduce each candidate mod the ideal
        alg->lmul_[n - 1].assign(g, std::vector<SparseVec>(dim_prev));
        for (int x = 0; x < g; ++x) {
            for (int wi = 0; wi < dim_prev; ++wi) {
                int ci = x * dim_prev + wi;
                SparseVec col(dim_n);
                if (new_index[ci] >= 0) {
                    col.add_term(new_index[ci], Scalar::one(f));
                } else {
                    SparseVec red = rref.reduce(SparseVec::unit(cand, ci, Scalar::one(f)));
                    for (const auto& [i, c] : red.terms) col.add_term(new_index[i], c);
                }
                alg->lmul_[n - 1][x][wi] = std::move(col);
            }
        }

        // right letter actions, derived from left folds
        alg->rmul_[n - 1].assign(g, std::vector<SparseVec>(dim_prev));
        for (int wi = 0; wi < dim_prev; ++wi) {
            const Word& w = alg->basis_[n - 1][wi];
            for (int x = 0; x < g; ++x) {
                SparseVec v = SparseVec::unit(g, x, Scalar::one(f));
                int deg = 1;
                for (int k = n - 2; k >= 0; --k) {
                    v = alg->lmul_letter_vec(w[k], deg, v);
                    ++deg;
                }
                alg->rmul_[n - 1][x][wi] = std::move(v);
            }
        }
    }
    return alg;
}

std::map<int, int> minimal_generator_degrees(const Presentation& p, int N) {
    p.validate();
    if (N < 2) throw PreconditionError("minimal_generator_degrees needs N >= 2");
    auto full = TruncatedAlgebra::truncate(p, N);

    // count(n) = dim(T/<relations of degree < n>)_n - dim(T/<all relations>)_n
    std::map<int, int> out;
    std::set<int> rel_degrees;
    for (const auto& r : p.relations) rel_degrees.insert(r.degree);
    if (rel_degrees.empty()) return out;

    AlgebraPtr prefix;  // truncation of the sub-presentation with relations of degree < n
    for (int n = 2; n <= N; ++n) {
        // the relation set below n only changes when degree n-1 carries relations
        if (!prefix || rel_degrees.count(n - 1)) {
            Presentation sub = p;
            sub.relations.clear();
            for (const auto& r : p.relations)
                if (r.degree < n) sub.relations.push_back(r);
            prefix = TruncatedAlgebra::truncate(sub, N);
        }
        long long c = prefix->dim(n) - full->dim(n);
        if (c > 0) out[n] = static_cast<int>(c);
    }
    return out;
}

Presentation quadratic_part(const Presentation& p) {
    p.validate();
    const int g = p.gens.count();
    const FieldSpec& f = p.field;
    SparseRref rref(g * g, /*prefer_last=*/false);
    for (const auto& r : p.relations) {
        if (r.degree != 2) continue;
        SparseVec v(g * g);
        for (const auto& [w, c] : r.terms) v.add_term(w[0] * g + w[1], c);
        rref.insert(std::move(v));
    }
    rref.finalize();
    Presentation q;
    q.gens = p.gens;
    q.field = f;
    for (const auto& [piv, row] : rref.rows()) {
        std::vector<std::pair<Word, Scalar>> terms;
        for (const auto& [i, c] : row.terms)
            terms.emplace_back(Word{static_cast<uint8_t>(i / g), static_cast<uint8_t>(i % g)}, c);
        q.relations.push_back(NcPoly::from_terms(2, std::move(terms)));
    }
    return q;
}

std::vector<SparseVec> ideal_space(const Presentation& p, int n) {
    p.validate();
    const int g = p.gens.count();
    double size = 1;
    for (int i = 0; i < n; ++i) size *= g;
    if (size > 1 << 18) throw StructuralError("ideal_space: word basis too large");
    const int tn = static_cast<int>(size);

    // word index in T_n: base-g digits, first letter most significant
    auto widx = [&](const Word& w) {
        int v = 0;
        for (uint8_t l : w) v = v * g + l;
        return v;
    };
    std::vector<Word> words_cache;
    SparseRref rref(tn, /*prefer_last=*/false);
    std::function<void(Word&, int, const std::function<void(const Word&)>&)> enumerate =
        [&](Word& w, int len, const std::function<void(const Word&)>& fn) {
            if (len == 0) {
                fn(w);
                return;
            }
            for (int x = 0; x < g; ++x) {
                w.push_back(static_cast<uint8_t>(x));
                enumerate(w, len - 1, fn);
                w.pop_back();
            }
        };
    for (const auto& r : p.relations) {
        if (r.degree > n) continue;
        for (int a = 0; a + r.degree <= n; ++a) {
            int b = n - r.degree - a;
            Word left;
            enumerate(left, a, [&](const Word& lw) {
                Word right;
                enumerate(right, b, [&](const Word& rw) {
                    SparseVec v(tn);
                    for (const auto& [m, c] : r.terms) {
                        Word full = lw;
                        full.insert(full.end(), m.begin(), m.end());
                        full.insert(full.end(), rw.begin(), rw.end());
                        v.add_term(widx(full), c);
                    }
                    rref.insert(std::move(v));
                });
            });
        }
    }
    rref.finalize();
    std::vector<SparseVec> rows;
    for (const auto& [piv, row] : rref.rows()) rows.push_back(row);
    return rows;
}

}  // namespace twistk
