#pragma once

// Particle state and the four-vectors reconstructed from its spinor pair:
// p = pi pi^+ + eta eta^+, and the triad
//   s = (pi pi^+ - eta eta^+)/m, v = (pi eta^+ + eta pi^+)/m, w = i(pi eta^+ - eta pi^+)/m.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "spindyn/spinor.hpp"

namespace spindyn {

//! Proper time, the spinor pair and the worldline position (output only).
struct particle_state {
	double tau = 0.0;
	spinor pi{};
	spinor eta{};
	four_vector x{};
};

//! Momentum p and the spacelike triad s, v, w.
struct tetrad {
	four_vector p, s, v, w;
};

inline constexpr double massless_threshold = 1e-12;

inline four_vector momentum(const spinor& pi, const spinor& eta) {
	return fourvector_of(outer(pi, pi) + outer(eta, eta));
}
inline four_vector momentum(const particle_state& st) { return momentum(st.pi, st.eta); }

//! sqrt(2) |pi^A eta_A|
inline double mass(const spinor& pi, const spinor& eta) { return sqrt2 * std::abs(contract(pi, eta)); }
inline double mass(const particle_state& st) { return mass(st.pi, st.eta); }

inline tetrad make_tetrad(const particle_state& st) {
	const double m = mass(st);
	if (m < massless_threshold) throw massless_state("tetrad: state is massless (m = " + std::to_string(m) + ")");
	const mat2 pp = outer(st.pi, st.pi), ee = outer(st.eta, st.eta);
	const mat2 pe = outer(st.pi, st.eta), ep = outer(st.eta, st.pi);
	const double inv = 1.0 / m;
	return {fourvector_of(pp + ee), inv * fourvector_of(pp - ee), inv * fourvector_of(pe + ep),
	        inv * fourvector_of(imag_unit * (pe - ep))};
}

inline constexpr std::array<std::string_view, 10> tetrad_condition_names{
    "s.s+1", "v.v+1", "w.w+1", "s.v", "s.w", "v.w", "s.p/m", "v.p/m", "w.p/m", "(p.p-m^2)/m^2"};

/// The ten inner-product conditions of the tetrad, as absolute residuals.
/// Products involving p are divided by m so every entry is dimensionless.
inline std::array<double, 10> tetrad_residuals(const tetrad& t, double m) {
	const auto d = [](const four_vector& a, const four_vector& b) { return minkowski_dot(a, b); };
	return {std::abs(d(t.s, t.s) + 1.0), std::abs(d(t.v, t.v) + 1.0), std::abs(d(t.w, t.w) + 1.0),
	        std::abs(d(t.s, t.v)),       std::abs(d(t.s, t.w)),       std::abs(d(t.v, t.w)),
	        std::abs(d(t.s, t.p)) / m,   std::abs(d(t.v, t.p)) / m,   std::abs(d(t.w, t.p)) / m,
	        std::abs(d(t.p, t.p) - m * m) / (m * m)};
}

inline double max_tetrad_residual(const tetrad& t, double m) {
	const auto r = tetrad_residuals(t, m);
	return *std::max_element(r.begin(), r.end());
}

} // namespace spindyn
