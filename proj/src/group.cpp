#include <wplab/group.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>

namespace wplab::group {

using hyp::BoundaryPoint;
using hyp::Isometry;

// ---------- words ----------

Word parse_word(const std::string& text, char gen1, char gen2) {
    Word w;
    if (text == "1" || text.empty()) return w;
    for (char ch : text) {
        if (ch == gen1) w.push_back(+1);
        else if (ch == std::tolower(gen1)) w.push_back(-1);
        else if (ch == gen2) w.push_back(+2);
        else if (ch == std::tolower(gen2)) w.push_back(-2);
        else throw InvalidWord(std::string("unexpected character '") + ch + "' in word");
    }
    return reduce_word(w);
}

std::string word_to_string(const Word& w, char gen1, char gen2) {
    if (w.empty()) return "1";
    std::string s;
    for (int8_t x : w) {
        switch (x) {
            case +1: s += gen1; break;
            case -1: s += static_cast<char>(std::tolower(gen1)); break;
            case +2: s += gen2; break;
            case -2: s += static_cast<char>(std::tolower(gen2)); break;
        }
    }
    return s;
}

Word reduce_word(const Word& w) {
    Word r;
    for (int8_t x : w) {
        if (!r.empty() && r.back() == -x) r.pop_back();
        else r.push_back(x);
    }
    return r;
}

Word concat_reduced(const Word& a, const Word& b) {
    Word r = a;
    for (int8_t x : b) {
        if (!r.empty() && r.back() == -x) r.pop_back();
        else r.push_back(x);
    }
    return r;
}

Word invert_word(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (auto& x : r) x = -x;
    return r;
}

namespace {

Word cyclic_reduce(Word w) {
    w = reduce_word(w);
    while (w.size() >= 2 && w.front() == -w.back()) {
        w.erase(w.begin());
        w.pop_back();
    }
    return w;
}

bool cyclic_rotation_of(const Word& a, const Word& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    const size_t n = a.size();
    for (size_t s = 0; s < n; ++s) {
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) ok = (a[(s + i) % n] == b[i]);
        if (ok) return true;
    }
    return false;
}

}  // namespace

bool same_curve(const Word& a, const Word& b) {
    const Word ca = cyclic_reduce(a), cb = cyclic_reduce(b);
    return cyclic_rotation_of(ca, cb) || cyclic_rotation_of(ca, cyclic_reduce(invert_word(cb)));
}

// ---------- construction ----------

const Isometry& MarkedGroup::generator(const std::string& name) const {
    for (const auto& [n, g] : generators)
        if (n == name) return g;
    throw InvalidWord("no generator named " + name);
}

Isometry MarkedGroup::word_matrix(const Word& w) const {
    Isometry M(1, 0, 0, 1);
    for (int8_t x : w) {
        const Isometry& g = generators[x > 0 ? x - 1 : -x - 1].second;
        M = M * (x > 0 ? g : g.inverse());
    }
    return M;
}

static void check_length(double l) {
    if (!(l > 0) || l > kMaxLength) throw LengthOutOfRange();
}

MarkedGroup build_punctured_torus(const PuncturedTorus& spec) {
    check_length(spec.l);
    const double h = spec.l / 2;
    const Isometry A(std::exp(h), 0, 0, std::exp(-h));
    // symmetric section: cosh(m/2) = coth(l/2), sinh(m/2) = csch(l/2),
    // forced by tr[A,B] = -2
    const double cm = 1.0 / std::tanh(h), sm = 1.0 / std::sinh(h);
    const Isometry B0(cm, sm, sm, cm);
    const double t = spec.tau / 2;
    const Isometry B = Isometry(std::exp(t), 0, 0, std::exp(-t)) * B0;
    return MarkedGroup{{{"A", A}, {"B", B}}, "A", spec};
}

MarkedGroup build_pants(const Pants& spec) {
    check_length(spec.l1);
    check_length(spec.l2);
    check_length(spec.l3);
    const double c1 = std::cosh(spec.l1 / 2), s1 = std::sinh(spec.l1 / 2);
    const double c2 = std::cosh(spec.l2 / 2), s2 = std::sinh(spec.l2 / 2);
    const double c3 = std::cosh(spec.l3 / 2);
    const Isometry X(std::exp(spec.l1 / 2), 0, 0, std::exp(-spec.l1 / 2));
    // axes of X and Y at distance d with cosh d = (c3 + c1 c2)/(s1 s2);
    // Y translates opposite to X so that tr XY = -2 cosh(l3/2)
    const double cosh_d = (c3 + c1 * c2) / (s1 * s2);
    const double chd2 = std::sqrt((cosh_d + 1) / 2), shd2 = std::sqrt((cosh_d - 1) / 2);
    const Isometry T(chd2, shd2, shd2, chd2);
    const Isometry Y = T * Isometry(std::exp(-spec.l2 / 2), 0, 0, std::exp(spec.l2 / 2)) * T.inverse();
    return MarkedGroup{{{"X", X}, {"Y", Y}}, "X", spec};
}

double commutator_trace(const MarkedGroup& G) {
    const Isometry& P = G.generators[0].second;
    const Isometry& Q = G.generators[1].second;
    // raw 2x2 products of [P, Q] = P Q P^{-1} Q^{-1}
    const double m1[4] = {P.a, P.b, P.c, P.d};
    const double m2[4] = {Q.a, Q.b, Q.c, Q.d};
    const double m3[4] = {P.d, -P.b, -P.c, P.a};
    const double m4[4] = {Q.d, -Q.b, -Q.c, Q.a};
    auto mul = [](const double* x, const double* y, double* r) {
        r[0] = x[0] * y[0] + x[1] * y[2];
        r[1] = x[0] * y[1] + x[1] * y[3];
        r[2] = x[2] * y[0] + x[3] * y[2];
        r[3] = x[2] * y[1] + x[3] * y[3];
    };
    double t1[4], t2[4], t3[4];
    mul(m1, m2, t1);
    mul(t1, m3, t2);
    mul(t2, m4, t3);
    return t3[0] + t3[3];
}

MarkedGroup twist(const MarkedGroup& G, double dtau) {
    const auto* pt = std::get_if<PuncturedTorus>(&G.spec);
    if (!pt) throw WrongSurfaceKind("twist requires a punctured torus");
    MarkedGroup out = G;
    const double t = dtau / 2;
    out.generators[1].second =
        Isometry(std::exp(t), 0, 0, std::exp(-t)) * G.generators[1].second;
    out.spec = PuncturedTorus{pt->l, pt->tau + dtau};
    return out;
}

// ---------- enumeration ----------

namespace {

constexpr int8_t kLetters[4] = {+1, -1, +2, -2};  // lex order A < a < B < b

struct LetterMatrices {
    Isometry m[4];
    explicit LetterMatrices(const MarkedGroup& G)
        : m{G.generators[0].second, G.generators[0].second.inverse(),
            G.generators[1].second, G.generators[1].second.inverse()} {}
    explicit LetterMatrices(const Isometry& g1, const Isometry& g2)
        : m{g1, g1.inverse(), g2, g2.inverse()} {}
    const Isometry& of(int8_t letter) const {
        return m[letter > 0 ? (letter - 1) * 2 : (-letter - 1) * 2 + 1];
    }
};

// pre-order DFS over freely reduced words (lexicographic order); fn may
// inspect the running word and matrix
void dfs_reduced(const LetterMatrices& L, int maxlen, Word& w, const Isometry& M,
                 const std::function<void(const Word&, const Isometry&)>& fn) {
    fn(w, M);
    if (static_cast<int>(w.size()) >= maxlen) return;
    for (int8_t x : kLetters) {
        if (!w.empty() && w.back() == -x) continue;
        w.push_back(x);
        dfs_reduced(L, maxlen, w, M * L.of(x), fn);
        w.pop_back();
    }
}

}  // namespace

std::vector<std::pair<Word, Isometry>> enumerate_words(const MarkedGroup& G, int depth) {
    if (depth < 0 || depth > kMaxDepth) throw DepthTooLarge();
    std::vector<std::pair<Word, Isometry>> out;
    const LetterMatrices L(G);
    Word w;
    dfs_reduced(L, depth, w, Isometry(1, 0, 0, 1),
                [&](const Word& word, const Isometry& M) { out.emplace_back(word, M); });
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
        return std::lexicographical_compare(x.first.begin(), x.first.end(),
                                            y.first.begin(), y.first.end(),
                                            [](int8_t p, int8_t q) {
                                                auto idx = [](int8_t v) {
                                                    return v > 0 ? (v - 1) * 2 : (-v - 1) * 2 + 1;
                                                };
                                                return idx(p) < idx(q);
                                            });
    });
    return out;
}

// ---------- double cosets ----------

namespace {

struct CosetFrame {
    Isometry S;                // conjugates axis(alpha) to (0, inf), repelling -> 0
    Isometry Sinv;
    double l_alpha;
    BoundaryPoint beta_rep;    // oriented endpoints of the conjugated beta axis
    BoundaryPoint beta_att;
    Isometry g1c, g2c;         // conjugated generators
    Isometry m_alpha;          // alpha in the original frame
};

bool is_alpha_axis(const BoundaryPoint& p, const BoundaryPoint& q) {
    // conjugation roundoff can turn the exact (0, inf) pair into a
    // tiny/huge finite pair; legitimate coset axes never straddle both
    const auto near_zero = [](const BoundaryPoint& x) {
        return !x.at_infinity && std::fabs(x.v) < 1e-8;
    };
    const auto near_inf = [](const BoundaryPoint& x) {
        return x.at_infinity || std::fabs(x.v) > 1e8;
    };
    return (near_inf(p) && near_zero(q)) || (near_inf(q) && near_zero(p));
}

CosetFrame make_frame(const MarkedGroup& G, const Word& alpha, const Word& beta) {
    const Isometry Ma = G.word_matrix(alpha);
    const Isometry Mb = G.word_matrix(beta);
    if (hyp::classify(Ma) != hyp::IsometryType::Hyperbolic ||
        hyp::classify(Mb) != hyp::IsometryType::Hyperbolic)
        throw NotHyperbolicWord();
    CosetFrame F;
    F.S = hyp::normalize_axis_to_imaginary(Ma);
    F.Sinv = F.S.inverse();
    F.l_alpha = hyp::translation_length(Ma);
    F.m_alpha = Ma;
    const Isometry Mbc = F.S * Mb * F.Sinv;
    const auto fp = hyp::fixed_points(Mbc);
    F.beta_rep = fp.repelling;
    F.beta_att = fp.attracting;
    if (is_alpha_axis(F.beta_rep, F.beta_att)) {
        // beta shares alpha's axis (alpha = beta or a power/inverse): snap the
        // conjugation roundoff to the exact endpoints
        const bool att_inf = std::fabs(Mbc.a) > std::fabs(Mbc.d);
        F.beta_att = att_inf ? BoundaryPoint::infinity() : BoundaryPoint::finite(0);
        F.beta_rep = att_inf ? BoundaryPoint::finite(0) : BoundaryPoint::infinity();
    }
    F.g1c = F.S * G.generators[0].second * F.Sinv;
    F.g2c = F.S * G.generators[1].second * F.Sinv;
    return F;
}

// numeric payload of a term from raw oriented image endpoints
bool fill_term(double l_alpha, const BoundaryPoint& P, const BoundaryPoint& Q,
               DoubleCosetTerm& t, int& k_out) {
    if (P.at_infinity || Q.at_infinity)
        throw SharedEndpoint("image axis asymptotic to the alpha axis");
    const double p = P.v, q = Q.v;
    const double num = std::fabs(p + q), den = std::fabs(p - q);
    if (den == 0) return false;
    t.u = num / den;
    t.crossing = t.u < 1.0;
    t.cos_oriented = t.crossing ? (p + q) / (q - p) : 0.0;
    const double h2 = std::fabs(p * q);
    if (!(h2 > 0) || !std::isfinite(h2))
        throw SharedEndpoint("image axis touches the alpha axis endpoints");
    double lnh = 0.5 * std::log(h2);
    int k = static_cast<int>(std::floor(lnh / l_alpha));
    double s = std::exp(-k * l_alpha);
    // settle roundoff at the fundamental-interval boundary
    while (std::sqrt(h2) * s >= std::exp(l_alpha)) { ++k; s = std::exp(-k * l_alpha); }
    while (std::sqrt(h2) * s < 1.0) { --k; s = std::exp(-k * l_alpha); }
    t.projection_height = std::sqrt(h2) * s;
    t.p = p * s;
    t.q = q * s;
    k_out = k;
    return true;
}

Word strip_powers(Word w, const Word& alpha, const Word& beta) {
    const Word ai = invert_word(alpha);
    bool changed = true;
    auto starts_with = [](const Word& w_, const Word& pre) {
        return w_.size() >= pre.size() && std::equal(pre.begin(), pre.end(), w_.begin());
    };
    auto ends_with = [](const Word& w_, const Word& suf) {
        return w_.size() >= suf.size() && std::equal(suf.rbegin(), suf.rend(), w_.rbegin());
    };
    const Word bi = invert_word(beta);
    while (changed) {
        changed = false;
        if (starts_with(w, alpha)) { w.erase(w.begin(), w.begin() + alpha.size()); changed = true; }
        else if (starts_with(w, ai)) { w.erase(w.begin(), w.begin() + ai.size()); changed = true; }
        if (ends_with(w, beta)) { w.resize(w.size() - beta.size()); changed = true; }
        else if (ends_with(w, bi)) { w.resize(w.size() - bi.size()); changed = true; }
    }
    return w;
}

Word alpha_power(const Word& alpha, int k) {
    Word r;
    const Word a = k >= 0 ? alpha : invert_word(alpha);
    for (int i = 0; i < std::abs(k); ++i) r = concat_reduced(r, a);
    return r;
}

void finish_term(const CosetFrame& F, const MarkedGroup& G, const Word& stripped,
                 const Word& alpha, int k, DoubleCosetTerm& t) {
    t.word = concat_reduced(alpha_power(alpha, -k), stripped);
    t.matrix = G.word_matrix(t.word);
    (void)F;
}

// fast path: alpha and beta single letters; stripped reduced words are in
// bijection with the double cosets, no dedupe pass needed
void stream_single_letter(const MarkedGroup& G, const Word& alpha, const Word& beta,
                          int depth, bool full,
                          const std::function<void(const DoubleCosetTerm&)>& fn) {
    const CosetFrame F = make_frame(G, alpha, beta);
    const LetterMatrices L(F.g1c, F.g2c);
    const int8_t la = alpha[0], lb = beta[0];
    const bool skip_identity = is_alpha_axis(F.beta_rep, F.beta_att);

    Word w;
    auto visit = [&](const Word& word, const Isometry& M) {
        if (!word.empty() && (word.back() == lb || word.back() == -lb)) return;
        if (word.empty() && skip_identity) return;
        const BoundaryPoint P = hyp::mobius_boundary(M, F.beta_rep);
        const BoundaryPoint Q = hyp::mobius_boundary(M, F.beta_att);
        DoubleCosetTerm t;
        int k = 0;
        if (!fill_term(F.l_alpha, P, Q, t, k)) return;
        t.depth = static_cast<int>(word.size());
        if (full) finish_term(F, G, word, alpha, k, t);
        fn(t);
    };
    // restrict the DFS to words with no leading alpha letter
    std::function<void(const Word&, const Isometry&)> rec_fn = visit;
    visit(w, Isometry(1, 0, 0, 1));
    for (int8_t x : kLetters) {
        if (x == la || x == -la) continue;
        w.push_back(x);
        dfs_reduced(L, depth, w, L.of(x), rec_fn);
        w.pop_back();
    }
}

struct RawTerm {
    DoubleCosetTerm t;
    Word stripped;
    int k = 0;
};

void general_terms(const MarkedGroup& G, const Word& alpha, const Word& beta, int depth,
                   bool full, std::vector<DoubleCosetTerm>& out) {
    if (depth > 12) throw DepthTooLarge("general-word double cosets cap at depth 12");
    const CosetFrame F = make_frame(G, alpha, beta);
    const LetterMatrices L(F.g1c, F.g2c);
    std::vector<RawTerm> raw;
    Word w;
    dfs_reduced(L, depth, w, Isometry(1, 0, 0, 1), [&](const Word& word, const Isometry& M) {
        const BoundaryPoint P = hyp::mobius_boundary(M, F.beta_rep);
        const BoundaryPoint Q = hyp::mobius_boundary(M, F.beta_att);
        if (is_alpha_axis(P, Q)) return;  // identity double coset (alpha = beta case)
        RawTerm r;
        if (!fill_term(F.l_alpha, P, Q, r.t, r.k)) return;
        r.stripped = strip_powers(word, alpha, beta);
        r.t.depth = static_cast<int>(r.stripped.size());
        raw.push_back(std::move(r));
    });
    // dedupe on the scale-normalized oriented endpoint pair
    std::sort(raw.begin(), raw.end(), [](const RawTerm& x, const RawTerm& y) {
        if (x.t.p != y.t.p) return x.t.p < y.t.p;
        return x.t.q < y.t.q;
    });
    const double tol = 1e-9;
    std::vector<RawTerm> uniq;
    for (auto& r : raw) {
        bool merged = false;
        if (!uniq.empty()) {
            auto& u = uniq.back();
            const double sp = std::max({1.0, std::fabs(u.t.p), std::fabs(u.t.q)});
            if (std::fabs(u.t.p - r.t.p) < tol * sp && std::fabs(u.t.q - r.t.q) < tol * sp) {
                if (r.t.depth < u.t.depth ||
                    (r.t.depth == u.t.depth && r.stripped < u.stripped))
                    u = r;
                merged = true;
            }
        }
        if (!merged) uniq.push_back(std::move(r));
    }
    // second pass: the same axis can normalize to adjacent fundamental
    // intervals when the height sits at a boundary
    const double el = std::exp(F.l_alpha);
    std::vector<bool> drop(uniq.size(), false);
    for (size_t i = 0; i + 1 < uniq.size(); ++i) {
        if (drop[i]) continue;
        for (size_t j = i + 1; j < uniq.size(); ++j) {
            if (drop[j]) continue;
            for (double s : {el, 1.0 / el}) {
                const double sp = std::max({1.0, std::fabs(uniq[i].t.p * s)});
                if (std::fabs(uniq[i].t.p * s - uniq[j].t.p) < tol * sp &&
                    std::fabs(uniq[i].t.q * s - uniq[j].t.q) < tol * sp)
                    drop[j] = true;
            }
        }
    }
    std::vector<RawTerm> kept;
    for (size_t i = 0; i < uniq.size(); ++i)
        if (!drop[i]) kept.push_back(std::move(uniq[i]));
    std::sort(kept.begin(), kept.end(), [](const RawTerm& x, const RawTerm& y) {
        if (x.t.depth != y.t.depth) return x.t.depth < y.t.depth;
        return x.stripped < y.stripped;
    });
    out.reserve(kept.size());
    for (auto& r : kept) {
        if (full) finish_term(F, G, r.stripped, alpha, r.k, r.t);
        out.push_back(std::move(r.t));
    }
}

}  // namespace

void for_each_double_coset(const MarkedGroup& G, const Word& alpha, const Word& beta,
                           int depth,
                           const std::function<void(const DoubleCosetTerm&)>& fn) {
    if (depth < 0 || depth > kMaxDepth) throw DepthTooLarge();
    if (alpha.size() == 1 && beta.size() == 1) {
        stream_single_letter(G, alpha, beta, depth, /*full=*/false, fn);
        return;
    }
    std::vector<DoubleCosetTerm> terms;
    general_terms(G, alpha, beta, depth, /*full=*/false, terms);
    for (const auto& t : terms) fn(t);
}

std::vector<DoubleCosetTerm> double_cosets(const MarkedGroup& G, const Word& alpha,
                                           const Word& beta, int depth) {
    if (depth < 0 || depth > kMaxDepth) throw DepthTooLarge();
    std::vector<DoubleCosetTerm> out;
    if (alpha.size() == 1 && beta.size() == 1) {
        stream_single_letter(G, alpha, beta, depth, /*full=*/true,
                             [&](const DoubleCosetTerm& t) { out.push_back(t); });
        std::sort(out.begin(), out.end(), [](const DoubleCosetTerm& x, const DoubleCosetTerm& y) {
            if (x.depth != y.depth) return x.depth < y.depth;
            return x.word < y.word;
        });
        return out;
    }
    general_terms(G, alpha, beta, depth, /*full=*/true, out);
    return out;
}

void for_each_orbit_point(const MarkedGroup& G, const Word& alpha, std::complex<double> p,
                          int depth,
                          const std::function<void(std::complex<double>, int)>& fn) {
    if (depth < 0 || depth > kMaxDepth) throw DepthTooLarge();
    if (!(p.imag() > 0)) throw DomainError("basepoint must be interior to H");
    const Isometry Ma = G.word_matrix(alpha);
    if (hyp::classify(Ma) != hyp::IsometryType::Hyperbolic) throw NotHyperbolicWord();
    const Isometry S = hyp::normalize_axis_to_imaginary(Ma);
    const Isometry Sinv = S.inverse();
    const std::complex<double> p0 = S.apply(p);
    const LetterMatrices L(S * G.generators[0].second * Sinv,
                           S * G.generators[1].second * Sinv);

    if (alpha.size() == 1) {
        // left cosets <alpha>\Gamma <-> reduced words with no leading alpha letter
        const int8_t la = alpha[0];
        Word w;
        auto visit = [&](const Word& word, const Isometry& M) {
            fn(M.apply(p0), static_cast<int>(word.size()));
        };
        visit(w, Isometry(1, 0, 0, 1));
        std::function<void(const Word&, const Isometry&)> rec_fn = visit;
        for (int8_t x : kLetters) {
            if (x == la || x == -la) continue;
            w.push_back(x);
            dfs_reduced(L, depth, w, L.of(x), rec_fn);
            w.pop_back();
        }
        return;
    }
    if (depth > 12) throw DepthTooLarge("general-word orbit enumeration caps at depth 12");
    const double la = hyp::translation_length(Ma);
    struct Pt { double arg, lnr_mod; std::complex<double> z; int depth; };
    std::vector<Pt> pts;
    Word w;
    dfs_reduced(L, depth, w, Isometry(1, 0, 0, 1), [&](const Word& word, const Isometry& M) {
        const std::complex<double> z = M.apply(p0);
        double m = std::fmod(std::log(std::abs(z)), la);
        if (m < 0) m += la;
        pts.push_back({std::arg(z), m, z, static_cast<int>(word.size())});
    });
    std::sort(pts.begin(), pts.end(), [](const Pt& x, const Pt& y) {
        if (x.arg != y.arg) return x.arg < y.arg;
        return x.lnr_mod < y.lnr_mod;
    });
    const double tol = 1e-9;
    std::vector<Pt> uniq;
    for (auto& pt : pts) {
        bool merged = false;
        if (!uniq.empty()) {
            auto& u = uniq.back();
            const double dm = std::min(std::fabs(u.lnr_mod - pt.lnr_mod),
                                       la - std::fabs(u.lnr_mod - pt.lnr_mod));
            if (std::fabs(u.arg - pt.arg) < tol && dm < tol) {
                if (pt.depth < u.depth) u = pt;
                merged = true;
            }
        }
        if (!merged) uniq.push_back(pt);
    }
    std::sort(uniq.begin(), uniq.end(), [](const Pt& x, const Pt& y) {
        if (x.depth != y.depth) return x.depth < y.depth;
        if (x.arg != y.arg) return x.arg < y.arg;
        return x.lnr_mod < y.lnr_mod;
    });
    for (const auto& pt : uniq) fn(pt.z, pt.depth);
}

}  // namespace wplab::group
