#pragma once

// Randomized property suites shared by the selftest command and the
// acceptance run. Each suite reports how many instances it tried and how
// many failed; nothing is skipped silently.

#include <cstdint>
#include <string>
#include <vector>

#include "logwt/random.hpp"

namespace logwt {

struct PropertyResult {
    std::string name;
    int trials = 0;
    int failures = 0;
    bool ok() const { return trials > 0 && failures == 0; }
};

/// dim E_r^{p,q}(Dec F) = dim E_{r+1}^{2p+q,-p}(F) through stabilization, on
/// random filtered complexes (dims <= 6, amplitude <= 4, window <= 4), Q and F2 alternating.
PropertyResult check_decalage_page_shift(Rng& rng, int trials);
/// Filtered hom classes between Whitehead towers equal H^0 of the plain hom complex.
PropertyResult check_whitehead_hom(Rng& rng, int trials);
/// A filtration F^q = tau^{<= -q} + (x, dx) is reached from the Whitehead tower by a filtered quasi-iso.
PropertyResult check_whitehead_essential_image(Rng& rng, int trials);
/// tcofib(shift P) ~ P(full), and shift(P)(empty)[r] ~ unshift(P)(full) ~ tfib(P)[r], r <= 3.
PropertyResult check_cube_identities(Rng& rng, int trials);

/// All suites at the given scale (1 = acceptance sizes).
std::vector<PropertyResult> run_property_suites(std::uint64_t seed, double scale = 1.0);

}  // namespace logwt
