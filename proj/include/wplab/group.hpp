#pragma once

// Marked Fuchsian groups from Fenchel-Nielsen data: once-punctured torus and
// pair of pants, twist deformation, reduced-word enumeration and canonical
// double-coset representatives.

#include <wplab/hyp.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace wplab::group {

inline constexpr double kMaxLength = 50.0;
inline constexpr int kMaxDepth = 25;

struct PuncturedTorus {
    double l;    // length of the distinguished geodesic, in (0, 50]
    double tau;  // twist displacement
};
struct Pants {
    double l1, l2, l3;  // boundary lengths, each in (0, 50]
};
using SurfaceSpec = std::variant<PuncturedTorus, Pants>;

// A word in the two generators: letters +1/-1 for the first generator and
// its inverse, +2/-2 for the second.  Text form: uppercase = generator,
// lowercase = inverse ("ABab" is the commutator), "1" or "" is the identity.
using Word = std::vector<int8_t>;

Word parse_word(const std::string& text, char gen1, char gen2);
std::string word_to_string(const Word& w, char gen1, char gen2);
Word reduce_word(const Word& w);
Word concat_reduced(const Word& a, const Word& b);
Word invert_word(const Word& w);

// conjugate in the free group up to inversion (same unoriented curve)
bool same_curve(const Word& a, const Word& b);

struct MarkedGroup {
    std::vector<std::pair<std::string, hyp::Isometry>> generators;
    std::string distinguished;  // generator whose axis is exactly (0, inf)
    SurfaceSpec spec;

    const hyp::Isometry& generator(const std::string& name) const;
    char gen_char(int index) const { return generators.at(index).first.at(0); }
    hyp::Isometry word_matrix(const Word& w) const;
    Word parse(const std::string& text) const {
        return parse_word(text, gen_char(0), gen_char(1));
    }
    std::string render(const Word& w) const {
        return word_to_string(w, gen_char(0), gen_char(1));
    }
};

// A = diag(e^{l/2}, e^{-l/2}); B = diag(e^{tau/2}, e^{-tau/2}) B0 with
// B0 symmetric, cosh(m/2) = coth(l/2); tr[A,B] = -2.
MarkedGroup build_punctured_torus(const PuncturedTorus& spec);

// X = diag(e^{l1/2}, e^{-l1/2}); Y conjugate of diag(e^{-l2/2}, e^{l2/2}) by
// the translation of length d along (-1,1), cosh d chosen so |tr XY| = 2cosh(l3/2).
MarkedGroup build_pants(const Pants& spec);

// replace B by diag(e^{dt/2}, e^{-dt/2}) B; punctured torus only
MarkedGroup twist(const MarkedGroup& G, double dtau);

// trace of the genuine SL(2,R) commutator [g1, g2]: the sign ambiguity of the
// lifts cancels, so it is computed in raw arithmetic without canonicalization
double commutator_trace(const MarkedGroup& G);

// all freely reduced words of length <= depth, (length, lex) order
std::vector<std::pair<Word, hyp::Isometry>> enumerate_words(const MarkedGroup& G, int depth);

struct DoubleCosetTerm {
    Word word;                 // canonical representative
    hyp::Isometry matrix;
    double u = 0;              // u-invariant of (0,inf) against the image axis
    bool crossing = false;
    double cos_oriented = 0;   // signed cos of the intersection angle (crossing only)
    double projection_height;  // in [1, e^{l_alpha})
    double p = 0, q = 0;       // image axis endpoints (repelling, attracting)
    int depth = 0;             // word length of the minimal representative
};

// canonical representatives of <alpha>\Gamma/<beta> with word length <= depth
std::vector<DoubleCosetTerm> double_cosets(const MarkedGroup& G, const Word& alpha,
                                           const Word& beta, int depth);

// streaming form used by the series evaluators; terms arrive in canonical
// (depth, lex) order so downstream sums are reproducible
void for_each_double_coset(const MarkedGroup& G, const Word& alpha, const Word& beta,
                           int depth, const std::function<void(const DoubleCosetTerm&)>& fn);

// left cosets <alpha>\Gamma: canonical orbit points C(p) for the series P_alpha
void for_each_orbit_point(const MarkedGroup& G, const Word& alpha, std::complex<double> p,
                          int depth,
                          const std::function<void(std::complex<double>, int)>& fn);

}  // namespace wplab::group
