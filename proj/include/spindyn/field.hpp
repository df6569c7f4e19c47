#pragma once

// Field spinors and their tensor counterparts.
//
// The charge-to-mass factor K is never folded into a field spinor; it is
// applied when the equations of motion are evaluated.

#include <array>
#include <functional>

#include "spindyn/spinor.hpp"

namespace spindyn {

//! Physical electric and magnetic field, natural units.
struct em_field {
	vec3 E{};
	vec3 B{};
	friend bool operator==(const em_field&, const em_field&) = default;
};

//! Largest componentwise difference of the E and B vectors.
inline double distance(const em_field& a, const em_field& b) {
	double d = 0.0;
	for (int i = 0; i < 3; ++i) d = std::max({d, std::abs(a.E[i] - b.E[i]), std::abs(a.B[i] - b.B[i])});
	return d;
}

//! Symmetric field spinor phi^{AB}.
struct field_spinor {
	mat2 m{};

	constexpr const complex& operator()(int a, int b) const noexcept { return m(a, b); }
	double symmetry_residual() const { return std::abs(m(0, 1) - m(1, 0)); }
};

//! Rank-four spinor F^{AA'BB'}.
struct field_spinor4 {
	std::array<complex, 16> a{};

	static constexpr int index(int A, int Ap, int B, int Bp) noexcept { return ((A * 2 + Ap) * 2 + B) * 2 + Bp; }
	constexpr complex& operator()(int A, int Ap, int B, int Bp) noexcept { return a[index(A, Ap, B, Bp)]; }
	constexpr const complex& operator()(int A, int Ap, int B, int Bp) const noexcept { return a[index(A, Ap, B, Bp)]; }
};

/// Covariant antisymmetric field tensor F_{ab}.
///
/// apply() maps a contravariant k^b to the contravariant vector
/// eta^{aa} F_{ab} k^b, which is how the tensor drives dk^a/dtau.
struct field_tensor {
	std::array<std::array<double, 4>, 4> f{};

	constexpr double& operator()(int a, int b) noexcept { return f[a][b]; }
	constexpr double operator()(int a, int b) const noexcept { return f[a][b]; }

	four_vector apply(const four_vector& k) const {
		four_vector r;
		for (int a = 0; a < 4; ++a) {
			double s = 0.0;
			for (int b = 0; b < 4; ++b) s += f[a][b] * k[b];
			r[a] = metric(a) * s;
		}
		return r;
	}

	//! max |F_ab + F_ba|
	double antisymmetry_residual() const {
		double r = 0.0;
		for (int a = 0; a < 4; ++a)
			for (int b = 0; b < 4; ++b) r = std::max(r, std::abs(f[a][b] + f[b][a]));
		return r;
	}
};

inline double distance(const field_tensor& x, const field_tensor& y) {
	double d = 0.0;
	for (int a = 0; a < 4; ++a)
		for (int b = 0; b < 4; ++b) d = std::max(d, std::abs(x(a, b) - y(a, b)));
	return d;
}

//! Covariant four-potential A_a(x). Must be re-entrant.
using potential_fn = std::function<four_vector(const four_vector&)>;

//! Either a uniform field or a field derived from a four-potential.
struct field_config {
	enum class kind { constant, potential };

	kind type = kind::constant;
	em_field em{};
	potential_fn potential{};
	double h = 1e-4;

	static field_config constant(em_field f) { return {kind::constant, f, {}, 1e-4}; }
	static field_config from_potential(potential_fn a, double step = 1e-4) {
		if (!(step > 0.0)) throw error("field_config: finite-difference step must be > 0");
		return {kind::potential, {}, std::move(a), step};
	}
};

inline field_spinor phi_from_EB(const em_field& f) {
	const auto& E = f.E;
	const auto& B = f.B;
	const complex p00 = -0.5 * complex{E[0] + B[1], -(E[1] - B[0])};
	const complex p01 = 0.5 * complex{E[2], B[2]};
	const complex p11 = 0.5 * complex{E[0] - B[1], E[1] + B[0]};
	return {{{p00, p01, p01, p11}}};
}

//! phi^{AB} = -eps^{AC} (d_alpha . sigma)_C^B with d_alpha = (eps + i beta)/2.
inline field_spinor phi_from_generators(const vec3& eps, const vec3& beta) {
	const mat2 g = generator_matrix({eps, beta});
	field_spinor phi;
	for (int A = 0; A < 2; ++A)
		for (int B = 0; B < 2; ++B) {
			complex s{};
			for (int C = 0; C < 2; ++C) s -= epsilon(A, C) * g(C, B);
			phi.m(A, B) = s;
		}
	return phi;
}

//! F^{AA'BB'} = eps^{AB} conj(phi)^{A'B'} + eps^{A'B'} phi^{AB}.
inline field_spinor4 bigF_from_phi(const field_spinor& phi) {
	field_spinor4 F;
	for (int A = 0; A < 2; ++A)
		for (int Ap = 0; Ap < 2; ++Ap)
			for (int B = 0; B < 2; ++B)
				for (int Bp = 0; Bp < 2; ++Bp)
					F(A, Ap, B, Bp) = epsilon(A, B) * std::conj(phi(Ap, Bp)) + epsilon(Ap, Bp) * phi(A, B);
	return F;
}

//! F^{AA'BB'} k_{BB'}, with both indices of k lowered by eps.
inline mat2 apply_bigF(const field_spinor4& F, const mat2& k) {
	mat2 low;
	for (int B = 0; B < 2; ++B)
		for (int Bp = 0; Bp < 2; ++Bp) {
			complex s{};
			for (int C = 0; C < 2; ++C)
				for (int Cp = 0; Cp < 2; ++Cp) s += k(C, Cp) * epsilon(C, B) * epsilon(Cp, Bp);
			low(B, Bp) = s;
		}
	mat2 r;
	for (int A = 0; A < 2; ++A)
		for (int Ap = 0; Ap < 2; ++Ap) {
			complex s{};
			for (int B = 0; B < 2; ++B)
				for (int Bp = 0; Bp < 2; ++Bp) s += F(A, Ap, B, Bp) * low(B, Bp);
			r(A, Ap) = s;
		}
	return r;
}

/// Tensor form of a rank-four field spinor.
///
/// Each basis vector e_b is pushed through apply_bigF and read back as a
/// four-vector, giving the mixed tensor column by column; the result is then
/// lowered with the metric.  Throws non_real if an image is not Hermitian.
inline field_tensor tensor_from_bigF(const field_spinor4& F, double tol = 1e-10) {
	field_tensor t;
	for (int b = 0; b < 4; ++b) {
		four_vector e;
		e[b] = 1.0;
		const mat2 img = apply_bigF(F, hermitian_of(e));
		if (const double r = hermitian_residual(img); r > tol)
			throw non_real("tensor_from_bigF: spinor map is not real (residual " + std::to_string(r) + ")");
		const four_vector col = fourvector_of(img, tol);
		for (int a = 0; a < 4; ++a) t(a, b) = metric(a) * col[a];
	}
	return t;
}

inline field_tensor tensor_from_EB(const em_field& f) { return tensor_from_bigF(bigF_from_phi(phi_from_EB(f))); }

/// Reads E and B back out of a covariant tensor built by tensor_from_bigF.
///
/// The spinor chain reproduces the textbook tensor of a y-reflected
/// (left-handed) frame:
///   F_{01} = E_x, F_{02} = -E_y, F_{03} = E_z,
///   F_{23} = B_x, F_{31} = -B_y, F_{12} = B_z.
inline em_field em_from_tensor(const field_tensor& t) {
	return {{t(0, 1), -t(0, 2), t(0, 3)}, {t(2, 3), -t(3, 1), t(1, 2)}};
}

//! F_{ab} = d_a A_b - d_b A_a by central differences with step cfg.h.
inline field_tensor field_from_potential(const field_config& cfg, const four_vector& x) {
	if (cfg.type != field_config::kind::potential || !cfg.potential)
		throw error("field_from_potential: config has no potential");
	if (!(cfg.h > 0.0)) throw error("field_from_potential: step must be > 0");
	// grad[a][b] = d_a A_b
	std::array<std::array<double, 4>, 4> grad{};
	for (int a = 0; a < 4; ++a) {
		four_vector xp = x, xm = x;
		xp[a] += cfg.h;
		xm[a] -= cfg.h;
		const four_vector ap = cfg.potential(xp), am = cfg.potential(xm);
		for (int b = 0; b < 4; ++b) grad[a][b] = (ap[b] - am[b]) / (2.0 * cfg.h);
	}
	field_tensor t;
	for (int a = 0; a < 4; ++a)
		for (int b = 0; b < 4; ++b) t(a, b) = grad[a][b] - grad[b][a];
	return t;
}

//! Field spinor seen at position x.
inline field_spinor phi_at(const field_config& cfg, const four_vector& x) {
	if (cfg.type == field_config::kind::constant) return phi_from_EB(cfg.em);
	return phi_from_EB(em_from_tensor(field_from_potential(cfg, x)));
}

} // namespace spindyn
