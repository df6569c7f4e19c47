#pragma once

// Spinor equations of motion d(pi^A)/dtau = K phi^{AB} pi_B (same for eta),
// the four-vectors built from the spinor pair, and a fixed-step integrator.

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <utility>
#include <vector>

#include "spindyn/field.hpp"
#include "spindyn/spinor.hpp"
#include "spindyn/state.hpp"

namespace spindyn {

struct integrator_config {
	enum class method { rk4, euler };

	double step = 1e-3;
	method scheme = method::rk4;
	int record_every = 1;

	void validate() const {
		if (!(step > 0.0) || !std::isfinite(step)) throw error("integrator: step must be > 0");
		if (record_every < 1) throw error("integrator: record_every must be >= 1");
	}
};

struct trajectory_point {
	double tau;
	four_vector p, s, v, w, x;
	double mass;
	double mass_residual;
	double ortho_residual;
};

using trajectory_record = std::vector<trajectory_point>;

//! K phi^{AB} xi_B
inline spinor spinor_rhs(const spinor& xi, const field_spinor& phi, double K) {
	const dual_spinor low = lower(xi);
	spinor d;
	for (int A = 0; A < 2; ++A) d[A] = K * (phi(A, 0) * low[0] + phi(A, 1) * low[1]);
	return d;
}

inline std::pair<spinor, spinor> spinor_rhs(const particle_state& st, const field_spinor& phi, double K) {
	return {spinor_rhs(st.pi, phi, K), spinor_rhs(st.eta, phi, K)};
}

/// Matrix M with phi^{AB} xi_B = M xi, i.e. M^A_C = phi^{AB} eps_{CB}.
/// Traceless because phi is symmetric.
inline mat2 spinor_rhs_matrix(const field_spinor& phi) {
	mat2 M;
	for (int A = 0; A < 2; ++A)
		for (int C = 0; C < 2; ++C) M(A, C) = phi(A, 0) * epsilon(C, 0) + phi(A, 1) * epsilon(C, 1);
	return M;
}

namespace detail {

// RK4/Euler state: both spinors plus the worldline position.
struct phase_point {
	spinor pi, eta;
	four_vector x;

	friend phase_point operator+(const phase_point& a, const phase_point& b) {
		return {a.pi + b.pi, a.eta + b.eta, a.x + b.x};
	}
	friend phase_point operator*(double h, const phase_point& a) { return {h * a.pi, h * a.eta, h * a.x}; }
};

template <class F, class Y>
Y rk4_step(const F& f, const Y& y, double h) {
	const Y k1 = f(y);
	const Y k2 = f(y + (0.5 * h) * k1);
	const Y k3 = f(y + (0.5 * h) * k2);
	const Y k4 = f(y + h * k3);
	return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class F, class Y>
Y euler_step(const F& f, const Y& y, double h) {
	return y + h * f(y);
}

// dx/dtau = p/m; for a massless pair the flagpole itself is used as tangent.
inline phase_point derivative(const phase_point& y, const field_config& field, double K) {
	const field_spinor phi = phi_at(field, y.x);
	const double m = mass(y.pi, y.eta);
	const four_vector p = momentum(y.pi, y.eta);
	return {spinor_rhs(y.pi, phi, K), spinor_rhs(y.eta, phi, K), m < massless_threshold ? p : (1.0 / m) * p};
}

} // namespace detail

//! Advances the state by `dtau` (cfg.step when zero; may be negative).
inline particle_state step(const particle_state& st, const field_config& field, double K,
                           const integrator_config& cfg, double dtau = 0.0) {
	const double h = dtau != 0.0 ? dtau : cfg.step;
	const auto f = [&](const detail::phase_point& y) { return detail::derivative(y, field, K); };
	const detail::phase_point y0{st.pi, st.eta, st.x};
	const detail::phase_point y1 =
	    cfg.scheme == integrator_config::method::rk4 ? detail::rk4_step(f, y0, h) : detail::euler_step(f, y0, h);
	return {st.tau + h, y1.pi, y1.eta, y1.x};
}

/// Exact spinor propagation through a uniform field: both spinors are
/// multiplied by exp(K dtau M).  The worldline position is not advanced.
inline particle_state propagate_exact(const particle_state& st, const field_spinor& phi, double K, double dtau) {
	const mat2 U = expm_traceless((K * dtau) * spinor_rhs_matrix(phi));
	return {st.tau + dtau, U * st.pi, U * st.eta, st.x};
}

inline four_vector combine(const tetrad& t, const std::array<double, 4>& c) {
	return c[0] * t.p + c[1] * t.s + c[2] * t.v + c[3] * t.w;
}

/// Checks dJ/dtau = K F J for J = c0 p + c1 s + c2 v + c3 w.
///
/// The derivative is a central difference of the integrated trajectory
/// (one step of size h either side of the state); the right-hand side uses
/// the tensor built from the field spinor at the state's position.
/// Returns the largest componentwise residual.
inline double evolve_fourvector_check(const particle_state& st, const field_config& field, double K,
                                      const std::array<double, 4>& coeffs, double h = 1e-3) {
	integrator_config cfg;
	cfg.step = h;
	const particle_state fwd = step(st, field, K, cfg, h);
	const particle_state bwd = step(st, field, K, cfg, -h);
	const four_vector jp = combine(make_tetrad(fwd), coeffs);
	const four_vector jm = combine(make_tetrad(bwd), coeffs);
	const four_vector dj = (1.0 / (2.0 * h)) * (jp - jm);
	const field_tensor F = tensor_from_bigF(bigF_from_phi(phi_at(field, st.x)));
	const four_vector rhs = K * F.apply(combine(make_tetrad(st), coeffs));
	return distance(dj, rhs);
}

/// Steps from st.tau to tau_end with cfg.step, shortening the last step so
/// the final tau equals tau_end.  on_step(i, n, state) runs after step i of n.
template <class OnStep>
particle_state advance(particle_state st, const field_config& field, double K, const integrator_config& cfg,
                       double tau_end, OnStep&& on_step) {
	cfg.validate();
	if (!(tau_end > st.tau)) throw error("integrate: tau_end must exceed the initial proper time");
	const auto n = static_cast<long>(std::ceil((tau_end - st.tau) / cfg.step - 1e-9));
	for (long i = 1; i <= n; ++i) {
		st = step(st, field, K, cfg, i == n ? tau_end - st.tau : cfg.step);
		if (i == n) st.tau = tau_end;
		on_step(i, n, st);
	}
	return st;
}

struct integration_result {
	trajectory_record record;
	particle_state final_state;
};

/// Integrates to tau_end, recording the initial state, every
/// cfg.record_every-th step and the final state.
inline integration_result integrate_with_final(const particle_state& initial, const field_config& field, double K,
                                               const integrator_config& cfg, double tau_end) {
	cfg.validate();
	const double m0 = mass(initial);
	if (m0 < massless_threshold) throw massless_state("integrate: initial state is massless");

	const auto record = [m0](const particle_state& st) {
		const tetrad t = make_tetrad(st);
		const double m = mass(st);
		return trajectory_point{st.tau, t.p, t.s, t.v, t.w, st.x, m, std::abs(m - m0) / m0, max_tetrad_residual(t, m)};
	};

	integration_result res;
	res.record.push_back(record(initial));
	res.final_state = advance(initial, field, K, cfg, tau_end, [&](long i, long n, const particle_state& st) {
		if (i % cfg.record_every == 0 || i == n) res.record.push_back(record(st));
	});
	return res;
}

inline trajectory_record integrate(const particle_state& initial, const field_config& field, double K,
                                   const integrator_config& cfg, double tau_end) {
	return integrate_with_final(initial, field, K, cfg, tau_end).record;
}

} // namespace spindyn
