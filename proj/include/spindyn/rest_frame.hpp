#pragma once

// Instantaneous rest frame of a spinor pair: the pure boost that removes the
// spatial momentum, the phase and modulus structure left over, the split of
// p into two null flagpoles of energy m/2, and the Pauli-matrix form of the
// triad s, v, w.

#include <array>
#include <cmath>
#include <numbers>

#include "spindyn/spinor.hpp"
#include "spindyn/state.hpp"

namespace spindyn {

namespace detail {

// n_x sigma_x - n_y sigma_y + n_z sigma_z: hermitian_of((0, n)) * sqrt(2).
inline mat2 direction_matrix(const vec3& n) {
	return {{complex{n[2]}, complex{n[0], n[1]}, complex{n[0], -n[1]}, complex{-n[2]}}};
}

// exp(sign * chi/2 * N) for unit n.
inline mat2 boost_matrix(const vec3& n, double chi, double sign) {
	return std::cosh(0.5 * chi) * mat2::identity() + (sign * std::sinh(0.5 * chi)) * direction_matrix(n);
}

inline double wrap_pi(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

} // namespace detail

/// Applies the rotation-free SL(2,C) element exp(-chi/2 n.sigma), with n the
/// direction of p and chi = asinh(|p|/m), to both spinors.
inline particle_state boost_to_rest(const particle_state& st) {
	const double m = mass(st);
	if (m < massless_threshold) throw massless_state("boost_to_rest: state is massless");
	const four_vector p = momentum(st);
	const double pn = spatial_norm(p);
	if (pn == 0.0) return st;
	const vec3 n{p.x / pn, p.y / pn, p.z / pn};
	const mat2 L = detail::boost_matrix(n, std::asinh(pn / m), -1.0);
	particle_state out = st;
	out.pi = L * st.pi;
	out.eta = L * st.eta;
	return out;
}

//! Moduli and phases of pi^A = (|pi0| e^{i phi0}, |pi1| e^{i phi1}), eta^A = (|eta0| e^{i xi0}, |eta1| e^{i xi1}).
struct rest_frame_state {
	spinor pi, eta;
	double phi0, phi1, xi0, xi1;
	double mod_pi0, mod_pi1, mod_eta0, mod_eta1;

	static rest_frame_state from(const particle_state& st) {
		return {st.pi,
		        st.eta,
		        std::arg(st.pi.c0),
		        std::arg(st.pi.c1),
		        std::arg(st.eta.c0),
		        std::arg(st.eta.c1),
		        std::abs(st.pi.c0),
		        std::abs(st.pi.c1),
		        std::abs(st.eta.c0),
		        std::abs(st.eta.c1)};
	}

	//! max(| |eta0| - |pi1| |, | |eta1| - |pi0| |)
	double moduli_residual() const {
		return std::max(std::abs(mod_eta0 - mod_pi1), std::abs(mod_eta1 - mod_pi0));
	}

	//! All four phases are meaningful only when no component vanishes.
	bool phases_defined(double tol = 1e-9) const {
		return std::min({mod_pi0, mod_pi1, mod_eta0, mod_eta1}) > tol;
	}
};

/// Distance of (phi1 - xi1) - (phi0 - xi0) from the nearest odd multiple of
/// pi, in [0, pi].
inline double check_phase_relation(const rest_frame_state& rf) {
	const double d = (rf.phi1 - rf.xi1) - (rf.phi0 - rf.xi0);
	return std::abs(detail::wrap_pi(d - std::numbers::pi));
}

struct null_split_result {
	four_vector p_pi, p_eta;
	double omega;
};

//! Flagpoles of pi and eta for a state at rest; each carries energy m/2.
inline null_split_result null_split(const particle_state& st) {
	const double m = mass(st);
	if (m < massless_threshold) throw massless_state("null_split: state is massless");
	const four_vector p = momentum(st);
	if (spatial_norm(p) > 1e-8 * m) throw not_at_rest("null_split: spatial momentum is not zero");
	return {fourvector_of(outer(st.pi, st.pi)), fourvector_of(outer(st.eta, st.eta)), 0.5 * m};
}

/// Residuals of the null-polarization relations for one flagpole k:
/// k.k, k.v, k.w and v.w (normalized by m where k enters), plus
/// |k_pi + k_eta| / m, which vanishes only when the two flagpoles carry
/// opposite spatial momenta.
struct polarization_residuals {
	double k_null, k_dot_v, k_dot_w, v_dot_w, opposite_momentum;

	double max() const { return std::max({k_null, k_dot_v, k_dot_w, v_dot_w, opposite_momentum}); }
};

struct polarization_report {
	polarization_residuals pi, eta;
	double max() const { return std::max(pi.max(), eta.max()); }
};

/// Evaluates the polarization relations for both flagpoles.  A state that is
/// not at rest is reported through opposite_momentum rather than rejected.
inline polarization_report polarization_check(const particle_state& st) {
	const tetrad t = make_tetrad(st);
	const double m = mass(st);
	const four_vector kp = fourvector_of(outer(st.pi, st.pi)), ke = fourvector_of(outer(st.eta, st.eta));
	const double opposite = spatial_norm(kp + ke) / m;
	const auto eval = [&](const four_vector& k) {
		return polarization_residuals{std::abs(minkowski_norm(k)) / (m * m), std::abs(minkowski_dot(k, t.v)) / m,
		                              std::abs(minkowski_dot(k, t.w)) / m, std::abs(minkowski_dot(t.v, t.w)),
		                              opposite};
	};
	return {eval(kp), eval(ke)};
}

/// Rest-frame spinor components of the triad written through moduli and
/// phases (requires |eta0| = |pi1|, |eta1| = |pi0|).  The w^{11'} entry uses
/// sin(phi1 - xi1).
struct rest_frame_components {
	double v00, v11, w00, w11;
	double s00, s11;
	complex s01;
	vec3 s;
};

inline rest_frame_components rest_components(const rest_frame_state& rf, double m) {
	const double omega = 0.5 * m;
	const double a = rf.mod_pi0 * rf.mod_pi1;
	const double d0 = rf.phi0 - rf.xi0, d1 = rf.phi1 - rf.xi1, dphi = rf.phi0 - rf.phi1;
	const double diff = rf.mod_pi0 * rf.mod_pi0 - rf.mod_pi1 * rf.mod_pi1;
	rest_frame_components c;
	c.v00 = 2.0 * a * std::cos(d0) / m;
	c.v11 = 2.0 * a * std::cos(d1) / m;
	c.w00 = -2.0 * a * std::sin(d0) / m;
	c.w11 = -2.0 * a * std::sin(d1) / m;
	c.s00 = diff / (2.0 * omega);
	c.s11 = -diff / (2.0 * omega);
	c.s01 = a / (2.0 * omega) * (std::polar(1.0, dphi) - std::polar(1.0, rf.xi0 - rf.xi1));
	c.s = {sqrt2 * a * std::cos(dphi) / omega, sqrt2 * a * std::sin(dphi) / omega, diff / (sqrt2 * omega)};
	return c;
}

/// Rotates a rest state so that pi = (c e^{i f}, 0), eta = (0, c e^{i f}),
/// c = sqrt(m / sqrt 2), which puts s along z and v along x.  The phase f is
/// half the argument of det[pi eta], an SU(2) invariant.
inline particle_state canonical_align(const particle_state& rest) {
	const double m = mass(rest);
	if (m < massless_threshold) throw massless_state("canonical_align: state is massless");
	const complex det = rest.pi.c0 * rest.eta.c1 - rest.eta.c0 * rest.pi.c1;
	const complex z = std::polar(std::sqrt(m / sqrt2), 0.5 * std::arg(det));
	particle_state out = rest;
	out.pi = {z, complex{}};
	out.eta = {complex{}, z};
	return out;
}

/// Hermitian matrices s^{AA'}, v^{AA'}, w^{AA'} in the rest frame.  With
/// `canonical` the rest state is first aligned by canonical_align, and the
/// matrices become diag(1,-1), [[0,1],[1,0]], [[0,i],[-i,0]] times 1/sqrt 2.
inline std::array<mat2, 3> pauli_form(const particle_state& st, bool canonical = false) {
	particle_state rest = boost_to_rest(st);
	if (canonical) rest = canonical_align(rest);
	const double inv = 1.0 / mass(rest);
	const mat2 pe = outer(rest.pi, rest.eta), ep = outer(rest.eta, rest.pi);
	return {inv * (outer(rest.pi, rest.pi) - outer(rest.eta, rest.eta)), inv * (pe + ep),
	        (inv * imag_unit) * (pe - ep)};
}

//! S = (s, v, w) / 2 in the rest frame.
inline std::array<mat2, 3> spin_operator(const particle_state& st, bool canonical = false) {
	auto m = pauli_form(st, canonical);
	for (auto& x : m) x *= 0.5;
	return m;
}

/// Spinor pair with momentum p, rest-frame s along spin_axis and overall
/// phase `phase`.  The rest pair is the canonical one rotated by the SU(2)
/// element whose columns are the +-1 eigenvectors of n.sigma (in this
/// library's vector map), then boosted to p without rotation.
inline std::pair<spinor, spinor> spinors_from_momentum(const four_vector& p, const vec3& spin_axis,
                                                       double phase = 0.0) {
	const double m2 = minkowski_norm(p);
	if (!(m2 > 0.0) || !(p.t > 0.0)) throw not_timelike("spinors_from_momentum: momentum is not timelike and future pointing");
	const double len = length(spin_axis);
	if (!(len > 0.0)) throw error("spinors_from_momentum: spin axis has zero length");
	const vec3 n{spin_axis[0] / len, spin_axis[1] / len, spin_axis[2] / len};
	const double m = std::sqrt(m2);

	spinor up;
	if (n[2] > -0.5) {
		up = {complex{1.0 + n[2]}, complex{n[0], -n[1]}};
	} else {
		up = {complex{n[0], n[1]}, complex{1.0 - n[2]}};
	}
	up *= 1.0 / norm(up);
	const spinor down{-std::conj(up.c1), std::conj(up.c0)};

	const complex c = std::polar(std::sqrt(m / sqrt2), phase);
	spinor pi = c * up, eta = c * down;

	const double pn = spatial_norm(p);
	if (pn > 0.0) {
		const mat2 L = detail::boost_matrix({p.x / pn, p.y / pn, p.z / pn}, std::asinh(pn / m), +1.0);
		pi = L * pi;
		eta = L * eta;
	}
	return {pi, eta};
}

} // namespace spindyn
