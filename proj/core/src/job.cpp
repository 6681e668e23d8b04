#include "twistk/job.hpp"

#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace twistk {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

// tokenizer for relation / twist expressions
struct Tok {
    enum Kind { ident, number, plus, minus, star, caret, slash, bar, arrow, end } kind;
    std::string text;
    int col;
};

struct Lexer {
    std::string s;
    int line;
    size_t pos = 0;

    Tok next() {
        while (pos < s.size() && isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        int col = static_cast<int>(pos) + 1;
        if (pos >= s.size()) return {Tok::end, "", col};
        char c = s[pos];
        if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            return {Tok::ident, s.substr(start, pos - start), col};
        }
        if (isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return {Tok::number, s.substr(start, pos - start), col};
        }
        if (c == '-' && pos + 1 < s.size() && s[pos + 1] == '>') {
            pos += 2;
            return {Tok::arrow, "->", col};
        }
        ++pos;
        switch (c) {
            case '+': return {Tok::plus, "+", col};
            case '-': return {Tok::minus, "-", col};
            case '*': return {Tok::star, "*", col};
            case '^': return {Tok::caret, "^", col};
            case '/': return {Tok::slash, "/", col};
            case '|': return {Tok::bar, "|", col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
};

struct ExprParser {
    Lexer lex;
    Tok cur;
    const FieldSpec& field;

    ExprParser(std::string text, int line, const FieldSpec& f) : lex{std::move(text), line}, field(f) {
        cur = lex.next();
    }
    void advance() { cur = lex.next(); }
    Tok peek() const {
        Lexer copy = lex;
        return copy.next();
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, lex.line, cur.col); }

    // [number [/ number]] with optional trailing '*'; returns 1 when absent.
    // A bare "1" directly before '|' is the unit monomial, not a coefficient.
    Scalar coefficient() {
        if (cur.kind != Tok::number) return Scalar::one(field);
        if (cur.text == "1" && peek().kind == Tok::bar) return Scalar::one(field);
        std::string text = cur.text;
        advance();
        if (cur.kind == Tok::slash) {
            advance();
            if (cur.kind != Tok::number) fail("expected denominator");
            text += "/" + cur.text;
            advance();
        }
        if (cur.kind == Tok::star) advance();
        auto v = Scalar::parse(field, text);
        if (!v) fail("bad scalar " + text);
        return *v;
    }

    // monomial over gens; "1" is the empty word
    Word monomial(const GeneratorSet& gens) {
        Word w;
        bool first = true;
        while (true) {
            if (cur.kind == Tok::number && cur.text == "1" && first) {
                advance();
            } else if (cur.kind == Tok::ident) {
                int g = gens.index(cur.text);
                if (g < 0) fail("unknown generator " + cur.text);
                advance();
                int pow = 1;
                if (cur.kind == Tok::caret) {
                    advance();
                    if (cur.kind != Tok::number) fail("expected exponent");
                    pow = std::stoi(cur.text);
                    advance();
                }
                for (int k = 0; k < pow; ++k) w.push_back(static_cast<uint8_t>(g));
            } else if (first) {
                fail("expected monomial");
            }
            first = false;
            if (cur.kind == Tok::star) {
                advance();
                continue;
            }
            break;
        }
        return w;
    }

    NcPoly relation(const GeneratorSet& gens) {
        std::vector<std::pair<Word, Scalar>> terms;
        bool neg = false;
        if (cur.kind == Tok::minus) {
            neg = true;
            advance();
        } else if (cur.kind == Tok::plus) {
            advance();
        }
        int degree = -1;
        while (true) {
            Scalar c = coefficient();
            Word w = monomial(gens);
            if (neg) c = -c;
            if (degree < 0)
                degree = static_cast<int>(w.size());
            else if (degree != static_cast<int>(w.size()))
                fail("inhomogeneous relation");
            terms.emplace_back(std::move(w), std::move(c));
            if (cur.kind == Tok::plus) {
                neg = false;
                advance();
            } else if (cur.kind == Tok::minus) {
                neg = true;
                advance();
            } else if (cur.kind == Tok::end) {
                break;
            } else {
                fail("unexpected token '" + cur.text + "'");
            }
        }
        return NcPoly::from_terms(degree, std::move(terms));
    }
};

}  // namespace

NcPoly parse_relation(const std::string& text, const GeneratorSet& gens, const FieldSpec& f, int line_no) {
    ExprParser p(text, line_no, f);
    return p.relation(gens);
}

JobSpec parse_job(std::istream& in) {
    JobSpec job;
    std::string line;
    std::string section;
    int line_no = 0;
    std::vector<std::pair<int, std::string>> gensA, gensB, relsA, relsB;
    std::string field_text;

    auto kv = [&](const std::string& text) -> std::optional<std::pair<std::string, std::string>> {
        auto eq = text.find('=');
        if (eq == std::string::npos) return std::nullopt;
        return std::make_pair(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    };

    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ParseError("unterminated section header", line_no, 1);
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        if (section == "field") {
            field_text = t;
        } else if (section == "algebra A" || section == "algebra B") {
            auto p = kv(t);
            if (!p) throw ParseError("expected 'gens = ...' or 'rel = ...'", line_no, 1);
            bool isA = section == "algebra A";
            if (p->first == "gens")
                (isA ? gensA : gensB).emplace_back(line_no, p->second);
            else if (p->first == "rel")
                (isA ? relsA : relsB).emplace_back(line_no, p->second);
            else
                throw ParseError("unknown key '" + p->first + "' in " + section, line_no, 1);
        } else if (section == "twist") {
            auto p = kv(t);
            if (p && p->first == "fixture") {
                job.fixture = p->second;
            } else if (p && p->first == "mode") {
                if (p->second == "seed")
                    job.seed_mode = true;
                else if (p->second == "table")
                    job.seed_mode = false;
                else
                    throw ParseError("twist mode must be seed or table", line_no, 1);
            } else {
                job.twist_lines.emplace_back(line_no, t);
            }
        } else if (section == "run") {
            auto p = kv(t);
            if (!p) throw ParseError("expected 'key = value'", line_no, 1);
            if (p->first == "degree") {
                job.degree = std::stoi(p->second);
                job.degree_explicit = true;
            } else if (p->first == "tor_degree") {
                job.tor_degree = std::stoi(p->second);
            } else if (p->first == "policy") {
                if (p->second == "unique")
                    job.policy = ExtendPolicy::require_unique;
                else if (p->second == "canonical")
                    job.policy = ExtendPolicy::take_canonical;
                else
                    throw ParseError("policy must be unique or canonical", line_no, 1);
            } else if (p->first == "split") {
                job.split_names = split_list(p->second, ',');
            } else {
                throw ParseError("unknown run key '" + p->first + "'", line_no, 1);
            }
        } else if (section.empty()) {
            throw ParseError("content before any section header", line_no, 1);
        } else {
            throw ParseError("unknown section [" + section + "]", line_no, 1);
        }
    }

    if (!field_text.empty()) {
        try {
            job.field = FieldSpec::parse(field_text);
        } catch (const StructuralError& e) {
            throw ParseError(e.what(), 0, 0);
        }
    }
    auto build_pres = [&](std::vector<std::pair<int, std::string>>& gens,
                          std::vector<std::pair<int, std::string>>& rels) -> std::optional<Presentation> {
        if (gens.empty()) {
            if (!rels.empty()) throw ParseError("relations given without generators", rels[0].first, 1);
            return std::nullopt;
        }
        Presentation p;
        p.field = job.field;
        for (auto& [ln, text] : gens)
            for (auto& name : split_list(text, ','))
                if (!name.empty()) p.gens.names.push_back(name);
        for (auto& [ln, text] : rels) p.relations.push_back(parse_relation(text, p.gens, p.field, ln));
        p.validate();
        return p;
    };
    job.presA = build_pres(gensA, relsA);
    job.presB = build_pres(gensB, relsB);
    return job;
}

namespace {

// "<bmon>|<amon> -> sum of [coeff] amon|bmon" applied to a table under construction
void apply_twist_line(TwistingMap& tw, const std::string& text, int line_no) {
    const auto& A = *tw.algA();
    const auto& B = *tw.algB();
    ExprParser p(text, line_no, tw.field());
    Word bw = p.monomial(B.presentation().gens);
    if (p.cur.kind != Tok::bar) p.fail("expected '|' after the B-monomial");
    p.advance();
    Word aw = p.monomial(A.presentation().gens);
    if (p.cur.kind != Tok::arrow) p.fail("expected '->'");
    p.advance();

    int j = static_cast<int>(bw.size()), i = static_cast<int>(aw.size());
    if (j < 1 || i < 1 || i + j > tw.bound())
        throw ParseError("twist line degrees out of range", line_no, 1);
    int bi = B.basis_index(j, bw);
    int ai = A.basis_index(i, aw);
    if (bi < 0 || ai < 0)
        throw ParseError("left side must be a normal-word basis monomial", line_no, 1);

    const auto& kb = tw.kunneth(i + j);
    SparseVec col(kb.dim());
    bool neg = false;
    if (p.cur.kind == Tok::minus) {
        neg = true;
        p.advance();
    }
    if (p.cur.kind == Tok::number && p.cur.text == "0") {
        // explicit zero column
        p.advance();
        if (p.cur.kind != Tok::end) p.fail("unexpected token after 0");
        tw.set_block_column(j, i, bi, ai, std::move(col));
        return;
    }
    while (true) {
        Scalar c = p.coefficient();
        Word wa = p.monomial(A.presentation().gens);
        if (p.cur.kind != Tok::bar) p.fail("expected '|' inside a twist term");
        p.advance();
        Word wb = p.monomial(B.presentation().gens);
        if (static_cast<int>(wa.size() + wb.size()) != i + j)
            throw ParseError("twist term degree mismatch", line_no, p.cur.col);
        if (neg) c = -c;
        // reduce both sides to normal form and accumulate
        SparseVec na = A.normal_form(wa);
        SparseVec nb = B.normal_form(wb);
        for (const auto& [a2, ca] : na.terms)
            for (const auto& [b2, cb] : nb.terms)
                col.add_term(kb.index(static_cast<int>(wa.size()), a2, b2), c * ca * cb);
        if (p.cur.kind == Tok::plus) {
            neg = false;
            p.advance();
        } else if (p.cur.kind == Tok::minus) {
            neg = true;
            p.advance();
        } else if (p.cur.kind == Tok::end) {
            break;
        } else {
            p.fail("unexpected token '" + p.cur.text + "'");
        }
    }
    tw.set_block_column(j, i, bi, ai, std::move(col));
}

std::string scalar_term(const Scalar& c, const std::string& mon, bool leading) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    std::string body = (cs == "1") ? mon : cs + "*" + mon;
    if (leading) return neg ? "-" + body : body;
    return (neg ? " - " : " + ") + body;
}

}  // namespace

TwistingMap parse_table_lines(const std::vector<std::pair<int, std::string>>& lines, const AlgebraPtr& A,
                              const AlgebraPtr& B, int bound) {
    TwistingMap tw(A, B, bound);
    for (const auto& [ln, text] : lines) apply_twist_line(tw, text, ln);
    return tw;
}

std::vector<std::string> table_lines(const TwistingMap& tw) {
    const auto& A = *tw.algA();
    const auto& B = *tw.algB();
    const auto& ga = A.presentation().gens.names;
    const auto& gb = B.presentation().gens.names;
    std::vector<std::string> out;
    for (int d = 2; d <= tw.bound(); ++d)
        for (int j = 1; j <= d - 1; ++j) {
            int i = d - j;
            for (int bi = 0; bi < B.dim(j); ++bi)
                for (int ai = 0; ai < A.dim(i); ++ai) {
                    const SparseVec& col = tw.block_column(j, i, bi, ai);
                    if (col.is_zero()) continue;
                    std::string line =
                        word_str(B.basis(j)[bi], gb) + "|" + word_str(A.basis(i)[ai], ga) + " -> ";
                    const auto& kb = tw.kunneth(d);
                    bool leading = true;
                    for (const auto& [idx, c] : col.terms) {
                        auto e = kb.decode(idx);
                        std::string mon =
                            word_str(A.basis(e.p)[e.ai], ga) + "|" + word_str(B.basis(e.q)[e.bi], gb);
                        line += scalar_term(c, mon, leading);
                        leading = false;
                    }
                    out.push_back(std::move(line));
                }
        }
    return out;
}

ResolvedJob resolve_job(const JobSpec& job) {
    ResolvedJob rj;
    if (!job.fixture.empty()) {
        Fixture fx = make_fixture(job.fixture, job.field, std::max(job.degree, 2));
        rj.A = fx.A;
        rj.B = fx.B;
        rj.table = std::move(fx.table);
        rj.is_seed = fx.is_seed;
        rj.split = fx.split;
    } else {
        if (!job.presA) throw StructuralError("job needs [algebra A] or a fixture");
        int bound = std::max(job.degree, 2);
        rj.A = TruncatedAlgebra::truncate(*job.presA, bound);
        if (job.presB) rj.B = TruncatedAlgebra::truncate(*job.presB, bound);
        if (!job.twist_lines.empty()) {
            if (!rj.B) throw StructuralError("twist lines need [algebra B]");
            int table_bound = bound;
            if (job.seed_mode) {
                int maxdeg = 2;
                // seed bound = largest degree among the given lines
                for (const auto& [ln, text] : job.twist_lines) {
                    ExprParser p(text, ln, job.field);
                    Word bw = p.monomial(rj.B->presentation().gens);
                    if (p.cur.kind != Tok::bar) p.fail("expected '|'");
                    p.advance();
                    Word aw = p.monomial(rj.A->presentation().gens);
                    maxdeg = std::max(maxdeg, static_cast<int>(bw.size() + aw.size()));
                }
                table_bound = maxdeg;
            }
            rj.table = parse_table_lines(job.twist_lines, rj.A, rj.B, table_bound);
            rj.is_seed = job.seed_mode;
        }
    }
    if (!job.split_names.empty()) {
        if (!rj.B) throw StructuralError("split given without algebra B");
        SeparableSplit split;
        for (const auto& name : job.split_names) {
            int idx = rj.B->presentation().gens.index(name);
            if (idx < 0) throw StructuralError("split names unknown generator " + name);
            split.primed.push_back(idx);
        }
        split.validate(rj.B->dim(1));
        rj.split = split;
    }
    return rj;
}

namespace {

json dims_json(const std::vector<long long>& dims) { return json(dims); }

json verdict_json(const Verdict& v, const TwistingMap& tw) {
    json out;
    out["ok"] = v.ok;
    if (!v.ok) {
        out["failure"] = {{"degree", v.failure->degree},
                          {"identity", v.failure->identity},
                          {"witness", v.failure->describe(tw)}};
    }
    return out;
}

const TwistingMap& need_table(const ResolvedJob& rj) {
    if (!rj.table) throw StructuralError("this command needs a twisting map ([twist] or --fixture)");
    return *rj.table;
}

// Seeds are extended before analysis commands; a stuck extension is an error
// here (the extend command reports it as a verdict instead).
const TwistingMap& need_full_table(ResolvedJob& rj, const JobSpec& job) {
    const TwistingMap& tw = need_table(rj);
    if (rj.is_seed && tw.bound() < job.degree) {
        auto out = extend_to_degree(tw, job.degree, job.policy);
        if (!out.table)
            throw StructuralError("seed does not extend to degree " + std::to_string(job.degree) +
                                  " (" + out.stuck->str() + ")");
        rj.table = std::move(*out.table);
        rj.is_seed = false;
    }
    return *rj.table;
}

json cmd_verify(const JobSpec& job) {
    ResolvedJob rj = resolve_job(job);
    const TwistingMap& tw = need_table(rj);
    int n = std::min(job.degree, tw.bound());
    Verdict v = verify_twisting_to_degree(tw, n);
    json out = verdict_json(v, tw);
    out["degree"] = n;
    return out;
}

json cmd_extend(const JobSpec& job) {
    ResolvedJob rj = resolve_job(job);
    const TwistingMap& tw = need_table(rj);
    ExtendOutcome outcome = extend_to_degree(tw, job.degree, job.policy);
    json steps = json::array();
    for (const auto& rep : outcome.per_degree)
        steps.push_back({{"degree", rep.degree},
                         {"delta_rank", rep.delta_rank},
                         {"delta_corank", rep.delta_corank},
                         {"exists", rep.exists},
                         {"unique", rep.unique},
                         {"freedom_dim", rep.freedom_dim}});
    json out;
    out["seed_degree"] = tw.bound();
    out["target_degree"] = job.degree;
    out["policy"] = job.policy == ExtendPolicy::require_unique ? "unique" : "canonical";
    out["steps"] = steps;
    if (outcome.stuck) {
        out["stuck"] = {{"degree", outcome.stuck->degree},
                        {"reason", outcome.stuck->reason == StuckInfo::Reason::inconsistent
                                       ? "inconsistent"
                                       : "ambiguous-under-require_unique"}};
    } else {
        out["table"] = table_lines(*outcome.table);
    }
    return out;
}

json cmd_classify(const JobSpec& job) {
    ResolvedJob rj = resolve_job(job);
    const TwistingMap& tw = need_full_table(rj, job);
    auto rep = classify(tw, rj.split);
    json out;
    out["one_sided_toward_B"] = rep.one_sided_toward_B;
    out["one_sided_toward_A"] = rep.one_sided_toward_A;
    out["pure"] = rep.pure;
    out["strongly_graded"] = rep.strongly_graded;
    if (rep.separable) out["separable"] = *rep.separable;
    return out;
}

json cmd_uep(const JobSpec& job) {
    ResolvedJob rj = resolve_job(job);
    const TwistingMap& tw = need_full_table(rj, job);
    auto profile = uep_profile(tw);
    json arr = json::array();
    for (const auto& [n, unique] : profile) arr.push_back({{"degree", n}, {"unique", unique}});
    json out;
    out["profile"] = arr;
    return out;
}

json cmd_present(const JobSpec& job) {
    ResolvedJob rj = resolve_job(job);
    const TwistingMap& tw = need_full_table(rj, job);
    int N = std::min(job.degree, tw.bound());
    ProductPresentation pp = twisted_product_presentation(tw, N);
    json out;
    out["generators"] = pp.combined.gens.names;
    json rels = json::array();
    for (const auto& r : pp.relA) rels.push_back(r.str(pp.combined.gens.names));
    for (const auto& r : pp.relB) rels.push_back(r.str(pp.combined.gens.names));
    out["component_relations"] = rels;
    json taus;
    for (const auto& [d, list] : pp.tau_relations) {
        json arr = json::array();
        for (const auto& r : list) arr.push_back(r.str(pp.combined.gens.names));
        taus[std::to_string(d)] = arr;
    }
    out["tau_relations"] = taus;
    json md = json::array();
    for (const auto& [d, c] : pp.minimal_degrees) md.push_back({{"degree", d}, {"count", c}});
    out["minimal_degrees"] = md;
    out["dims"] = dims_json(pp.dims);
    return out;
}

json cmd_hilbert(const JobSpec& job) {
    ResolvedJob rj = resolve_job(job);
    if (rj.table && rj.is_seed) need_full_table(rj, job);
    json out;
    if (rj.A) out["A"] = dims_json(rj.A->hilbert());
    if (rj.B) out["B"] = dims_json(rj.B->hilbert());
    if (rj.table) {
        int N = std::min(job.degree, rj.table->bound());
        std::vector<long long> dims(N + 1, 0);
        for (int n = 0; n <= N; ++n)
            for (int p = 0; p <= n; ++p)
                dims[n] += static_cast<long long>(rj.A->dim(p)) * rj.B->dim(n - p);
        out["product"] = dims_json(dims);
    }
    return out;
}

json tor_json(const TorTable& t) {
    json arr = json::array();
    for (const auto& [key, dim] : t.entries)
        arr.push_back({{"i", key.first}, {"j", key.second}, {"dim", dim}});
    return arr;
}

json cmd_koszul(const JobSpec& job) {
    ResolvedJob rj = resolve_job(job);
    if (rj.table && rj.is_seed) need_full_table(rj, job);
    int N = job.degree_explicit ? job.degree : job.tor_degree;
    AlgebraPtr target;
    if (rj.table) {
        ProductPresentation pp = twisted_product_presentation(*rj.table, std::min(N, rj.table->bound()));
        target = TruncatedAlgebra::truncate(pp.combined, std::min(N, rj.table->bound()));
    } else if (rj.A) {
        target = TruncatedAlgebra::truncate(rj.A->presentation(), N);
    } else {
        throw StructuralError("koszul needs an algebra or a twisting map");
    }
    KoszulVerdict v = koszul_verdict(target, std::min(N, target->bound()));
    json out;
    out["verdict"] = v.str();
    switch (v.kind) {
        case KoszulVerdict::Kind::koszul_to_degree:
            out["degree"] = v.degree;
            break;
        case KoszulVerdict::Kind::not_quadratic:
            out["witness_degree"] = v.degree;
            break;
        case KoszulVerdict::Kind::not_koszul:
            out["witness_bidegree"] = {v.witness.first, v.witness.second};
            break;
    }
    if (v.tor) out["tor"] = tor_json(*v.tor);
    return out;
}

json cmd_catalog(const JobSpec&) {
    json arr = json::array();
    auto add = [&](const std::string& name, const std::string& desc) {
        arr.push_back({{"name", name}, {"description", desc}});
    };
    add("ex5_3", "k[x], k[y] with the parity-case twisting map; product k<x,y>/<x^2, y^2*x - x*y^2>");
    add("ex7_1", "free x,y and d,u with the separable seed tau(d|x) = x|d + 1|d^2, tau(u|x) = x|u + x^2|1");
    add("ex7_1_induced", "ex7_1 pushed to k[x,y] along I = <x*y - y*x>");
    add("ex7_2", "k<x>/<x^3>, k<y>/<y^3> family tau_{lambda,mu}; parameters via ex7_2(l,m), default (-1,0)");
    add("ex7_4", "k[x] and free d,u with the separable two-sided map");
    add("abc(a,b,c)", "degree-2 seed tau(y|x) = a*x^2|1 + b*x|y + c*1|y^2 on one-generator free algebras");
    add("b0(c)", "the b = 0 seed tau(y|x) = x^2|1 + c*1|y^2");
    json out;
    out["fixtures"] = arr;
    return out;
}

}  // namespace

json run_command(const std::string& command, const JobSpec& job) {
    json payload;
    if (command == "verify")
        payload = cmd_verify(job);
    else if (command == "extend")
        payload = cmd_extend(job);
    else if (command == "classify")
        payload = cmd_classify(job);
    else if (command == "uep")
        payload = cmd_uep(job);
    else if (command == "present")
        payload = cmd_present(job);
    else if (command == "hilbert")
        payload = cmd_hilbert(job);
    else if (command == "koszul")
        payload = cmd_koszul(job);
    else if (command == "catalog")
        payload = cmd_catalog(job);
    else
        throw StructuralError("unknown command: " + command);
    json out;
    out["schema"] = "twistk/1";
    out["command"] = command;
    out["payload"] = payload;
    return out;
}

}  // namespace twistk
