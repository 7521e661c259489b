#pragma once

#include "seastate/seaway/sea_state.hpp"

namespace seastate::seaway {

/// Two-parameter Bretschneider spectral density S(omega) in m^2 s,
///   S = 124 hs^2 / tz^4 * omega^-5 * exp(-496 / (tz^4 omega^4)).
/// Throws DomainError for omega <= 0 and ArgumentError for hs < 0 or tz <= 0.
/// hs = 0 is accepted and yields a zero spectrum.
double bretschneider_density(double omega, double hs, double tz);

/// Zeroth moment of the spectrum, hs^2 / 16 (closed-form integral).
double spectrum_m0(double hs, double tz);

/// Angular frequency of the spectral peak, (4 * 496 / (5 tz^4))^(1/4).
double peak_frequency(double tz);

/// Maximum allowed steepness: 1/10 up to tz = 6 s, 1/15 from tz = 12 s,
/// linear in between.
double steepness_limit(double tz);

/// Mean wave steepness 2 pi hs / (g tz^2).
double steepness(const SeaState& state);

/// True when the state is not breaking-limited, steepness <= steepness_limit.
bool steepness_ok(const SeaState& state);

}  // namespace seastate::seaway
