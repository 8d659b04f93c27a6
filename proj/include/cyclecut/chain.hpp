#ifndef CYCLECUT_CHAIN_HPP
#define CYCLECUT_CHAIN_HPP

#include <array>
#include <string>

#include "cyclecut/rational.hpp"

namespace cyclecut {

/// Pattern states of the boundary-parity Markov chains. Each state covers the
/// two complementary parity patterns listed in pattern_parities().
enum class PatternState { s1 = 0, s2 = 1, s3 = 2, s4 = 3 };

enum class PatternVariant { a = 0, b = 1 };

struct Pattern {
    PatternState state;
    PatternVariant variant;

    friend bool operator==(const Pattern& x, const Pattern& y) {
        return x.state == y.state && x.variant == y.variant;
    }
};

/// Classifies boundary parities given in frame-role order (UL, DL, UR, DR):
///   s1 = diagonal, s2 = both up / both down, s3 = same end, s4 = all or none.
/// Throws ParityViolation when an odd number of entries is odd.
Pattern classify_pattern(const std::array<int, 4>& parities);

/// Parities (UL, DL, UR, DR) of a pattern; inverse of classify_pattern.
std::array<int, 4> pattern_parities(PatternState state, PatternVariant variant);

/// Exact distribution over the four states.
struct StateDistribution {
    std::array<Rational, 4> p{};

    Rational& operator[](int i) { return p[static_cast<std::size_t>(i)]; }
    const Rational& operator[](int i) const { return p[static_cast<std::size_t>(i)]; }

    Rational sum() const { return p[0] + p[1] + p[2] + p[3]; }
    bool is_distribution() const;

    friend bool operator==(const StateDistribution& a, const StateDistribution& b) {
        return a.p == b.p;
    }
    friend bool operator!=(const StateDistribution& a, const StateDistribution& b) {
        return !(a == b);
    }

    std::string str() const;
};

inline StateDistribution make_distribution(Rational p1, Rational p2, Rational p3, Rational p4) {
    return StateDistribution{{p1, p2, p3, p4}};
}

/// The feasible region R: p1 + p2 = 2/3 and p2 + p4 >= 1/3. Membership means
/// the chains can keep expected edge usage at exactly 2/3 all the way down.
bool region_contains(const StateDistribution& p);

/// The four vertices of R (as a polytope within the distribution simplex).
std::array<StateDistribution, 4> region_vertices();

/// Default root distribution (1/3, 1/3, 1/3, 0); lies in R and has p4 = 0.
StateDistribution default_root_distribution();

/// One application of the even-children chain with parameters z, w in [0,1].
StateDistribution even_step(const StateDistribution& p, const Rational& z, const Rational& w);

/// One application of the odd-children chain for a cut with k children:
/// x, y in [1/k, 1] and z, w in [0, (k-1)/k].
StateDistribution odd_step(const StateDistribution& p, const Rational& x, const Rational& y,
                           const Rational& z, const Rational& w, int k);

/// Swaps the first two coordinates; the distribution seen by a twisted child.
StateDistribution swap12(const StateDistribution& p);

/// Chain parameters for one cut plus the branch probability each per-state
/// connection rule fires with.
struct ChainParams {
    bool even = true;
    int k = 2;
    Rational x, y, z, w;
    /// alpha[s]: probability of the "alpha branch" of the rule for state s.
    /// In the even chain only s2 and s4 have a branching rule.
    std::array<Rational, 4> alpha{};
};

/// Region-preserving parameter choice: even cuts use w = 1 and the unique z
/// putting the image back on p1 + p2 = 2/3; odd cuts use x = y = z = w = 2/3.
ChainParams select_params(const StateDistribution& p, int k, bool even);

/// Applies the chain step described by params.
StateDistribution apply_step(const StateDistribution& p, const ChainParams& params);

/// Infeasibility certificate for distributions outside R.
struct NecessityCertificate {
    enum class Kind {
        in_region,
        usage_exceeds,       ///< p1+p2 < 2/3: usage already above 2/3
        two_step_collapse,   ///< p1+p2 > 2/3: after two even steps p1+p2 < 2/3 at every corner
        one_step_collapse,   ///< p1+p2 = 2/3, p2+p4 < 1/3: no z,w keeps p1+p2 at 2/3
    };
    Kind kind;
    Rational bound;
    std::string detail;
};

NecessityCertificate check_necessity(const StateDistribution& p);

class SplitMix64;

/// Random point of R: a rational convex combination of the polytope vertices.
StateDistribution random_region_point(SplitMix64& rng);

}  // namespace cyclecut

#endif
