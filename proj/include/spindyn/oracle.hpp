#pragma once

// Ground truth for the spinor engine: closed-form motion in a uniform
// magnetic field along z, an independent RK4 integrator of the tensor
// Lorentz-force equation, and a least-squares precession fit.
//
// Depends only on the algebra, field and state headers; no stepping code is
// shared with dynamics.hpp.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "spindyn/field.hpp"
#include "spindyn/spinor.hpp"
#include "spindyn/state.hpp"

namespace spindyn {

/// Sense in which transverse components rotate in a field B z-hat with
/// qB > 0: x + iy picks up exp(i * rotation_sense * qB/m * tau).
///
/// The chain phi(E,B) -> d(xi)/dtau gives d(pi^0)/dtau = +i (qB/2m) pi^0, so
/// the sense is +1.  The closed-form solution as usually printed,
/// p_x = A1 cos + A2 sin, corresponds to -1.
inline constexpr int rotation_sense = +1;

//! Charged particle of mass m in the uniform field B z-hat.
struct constant_b_scenario {
	double q = 1.0;
	double B = 1.0;
	double m = 1.0;
	particle_state initial{};

	double omega() const { return q * B / m; }
};

//! Each spinor component picks up a pure phase exp(+-i omega tau / 2).
inline particle_state spinor_solution(const constant_b_scenario& sc, double tau) {
	const double half = 0.5 * rotation_sense * sc.omega() * tau;
	const complex up = std::polar(1.0, half), down = std::polar(1.0, -half);
	particle_state st = sc.initial;
	st.tau = sc.initial.tau + tau;
	st.pi = {st.pi.c0 * up, st.pi.c1 * down};
	st.eta = {st.eta.c0 * up, st.eta.c1 * down};
	return st;
}

/// Rotates the transverse part of a four-vector by the precession angle
/// omega*tau; time and z components are constants of the motion.
///
/// With A1 + i A2 the initial x + iy,
///   x(tau) = A1 cos(w tau) - sense A2 sin(w tau)
///   y(tau) = A2 cos(w tau) + sense A1 sin(w tau).
inline four_vector precess(const four_vector& initial, double omega, double tau) {
	const double a1 = initial.x, a2 = initial.y;
	const double c = std::cos(omega * tau), s = rotation_sense * std::sin(omega * tau);
	return {initial.t, a1 * c - a2 * s, a2 * c + a1 * s, initial.z};
}

inline four_vector momentum_solution(const constant_b_scenario& sc, double tau) {
	const four_vector p0 = fourvector_of(outer(sc.initial.pi, sc.initial.pi) + outer(sc.initial.eta, sc.initial.eta));
	return precess(p0, sc.omega(), tau);
}

//! p, s, v and w all precess identically; constants fixed by the initial tetrad.
inline tetrad tetrad_solution(const constant_b_scenario& sc, double tau) {
	const tetrad t0 = make_tetrad(sc.initial);
	const double w = sc.omega();
	return {precess(t0.p, w, tau), precess(t0.s, w, tau), precess(t0.v, w, tau), precess(t0.w, w, tau)};
}

/// Classical RK4 on dp^a/dtau = K eta^{aa} F_{ab} p^b.
///
/// Returns p at tau = 0, h, 2h, ...; the last step is shortened to land on
/// tau_end exactly.
inline std::vector<four_vector> tensor_integrate(const field_tensor& F, double K, const four_vector& p0, double h,
                                                 double tau_end) {
	if (!(h > 0.0)) throw error("tensor_integrate: h must be > 0");
	std::vector<four_vector> out{p0};
	if (!(tau_end > 0.0)) return out;
	const auto n = static_cast<long>(std::ceil(tau_end / h - 1e-9));
	out.reserve(static_cast<std::size_t>(n + 1));
	const auto rhs = [&](const four_vector& p) { return K * F.apply(p); };
	four_vector p = p0;
	double tau = 0.0;
	for (long i = 1; i <= n; ++i) {
		const double dt = i == n ? tau_end - tau : h;
		const four_vector k1 = rhs(p);
		const four_vector k2 = rhs(p + (0.5 * dt) * k1);
		const four_vector k3 = rhs(p + (0.5 * dt) * k2);
		const four_vector k4 = rhs(p + dt * k3);
		p += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
		tau += dt;
		out.push_back(p);
	}
	return out;
}

struct precession_sample {
	double tau, x, y;
};

/// Fit of (x, y) = amplitude * (cos(w tau + phase), -sin(w tau + phase)).
/// A rotation with x + iy ~ exp(+i |w| tau) therefore fits with w < 0.
struct precession_fit {
	double frequency;
	double amplitude;
	double phase;
	double rms_residual;
};

/// Least-squares precession fit.
///
/// With z = x + iy the model is z = c exp(-i w tau).  For fixed w the best c
/// is linear, leaving the one-dimensional problem of maximising
/// |S(w)|^2, S(w) = sum z_k exp(i w tau_k).  The starting point comes from a
/// linear fit to the unwrapped phase of z (so at least four samples per period
/// are needed), then Newton's method on d|S|^2/dw = 0.
inline precession_fit fit_precession(const std::vector<precession_sample>& samples) {
	const std::size_t n = samples.size();
	if (n < 3) throw degenerate_fit("fit_precession: need at least three samples");

	complex mean{};
	double zmax = 0.0;
	for (const auto& s : samples) {
		mean += complex{s.x, s.y};
		zmax = std::max(zmax, std::hypot(s.x, s.y));
	}
	mean /= static_cast<double>(n);
	double spread = 0.0;
	for (const auto& s : samples) spread = std::max(spread, std::abs(complex{s.x, s.y} - mean));
	if (zmax < 1e-12 || spread < 1e-12 * std::max(1.0, std::abs(mean)))
		throw degenerate_fit("fit_precession: no rotating transverse component");

	// unwrapped phase regression
	double prev = std::arg(complex{samples[0].x, samples[0].y}), offset = 0.0;
	double st = 0.0, sp = 0.0, stt = 0.0, stp = 0.0;
	for (const auto& s : samples) {
		double a = std::arg(complex{s.x, s.y});
		while (a + offset - prev > std::numbers::pi) offset -= 2.0 * std::numbers::pi;
		while (a + offset - prev < -std::numbers::pi) offset += 2.0 * std::numbers::pi;
		a += offset;
		prev = a;
		st += s.tau;
		sp += a;
		stt += s.tau * s.tau;
		stp += s.tau * a;
	}
	const double dn = static_cast<double>(n);
	const double denom = dn * stt - st * st;
	if (!(std::abs(denom) > 0.0)) throw degenerate_fit("fit_precession: samples share one tau");
	double w = -(dn * stp - st * sp) / denom;

	const auto sums = [&](double om) {
		complex s0{}, s1{}, s2{};
		for (const auto& s : samples) {
			const complex term = complex{s.x, s.y} * std::polar(1.0, om * s.tau);
			s0 += term;
			s1 += imag_unit * s.tau * term;
			s2 -= s.tau * s.tau * term;
		}
		return std::array<complex, 3>{s0, s1, s2};
	};
	for (int it = 0; it < 50; ++it) {
		const auto [s0, s1, s2] = sums(w);
		const double g = 2.0 * std::real(std::conj(s0) * s1);
		const double gp = 2.0 * (std::norm(s1) + std::real(std::conj(s0) * s2));
		if (!(gp < 0.0)) break;
		const double dw = -g / gp;
		w += dw;
		if (std::abs(dw) <= 1e-15 * std::max(1.0, std::abs(w))) break;
	}

	const complex c = sums(w)[0] / dn;
	double ss = 0.0;
	for (const auto& s : samples) ss += std::norm(complex{s.x, s.y} - c * std::polar(1.0, -w * s.tau));
	const double amp = std::abs(c);
	if (amp < 1e-12) throw degenerate_fit("fit_precession: fitted amplitude vanishes");
	return {w, amp, -std::arg(c), std::sqrt(ss / dn)};
}

} // namespace spindyn
