#pragma once

// Two-spinor algebra on flat spin space.
//
// Index convention: eps_{01} = eps^{01} = +1 and indices are lowered from the
// right, xi_A = xi^B eps_{BA}.  This gives xi_0 = -xi^1, xi_1 = xi^0 and makes
// the component form of d(xi^A)/dtau = phi^{AB} xi_B read
//   d(xi^0)/dtau = -phi^{00} xi^1 + phi^{01} xi^0
//   d(xi^1)/dtau = -phi^{10} xi^1 + phi^{11} xi^0.
//
// Four-vectors map to Hermitian matrices with a 1/sqrt(2) normalization:
//   sqrt(2) H^{00'} = t+z,  sqrt(2) H^{01'} = x+iy,
//   sqrt(2) H^{10'} = x-iy, sqrt(2) H^{11'} = t-z,
// so that 2 det H is the Minkowski norm with signature (+,-,-,-).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <string>

#include "spindyn/error.hpp"

namespace spindyn {

using complex = std::complex<double>;
using vec3 = std::array<double, 3>;

inline constexpr double sqrt2 = std::numbers::sqrt2;
inline constexpr complex imag_unit{0.0, 1.0};

//! Antisymmetric spin metric; eps^{AB} and eps_{AB} share the same components.
constexpr double epsilon(int a, int b) noexcept {
	return a == b ? 0.0 : (a == 0 ? 1.0 : -1.0);
}

//! Contravariant spinor xi^A.
struct spinor {
	complex c0{}, c1{};

	constexpr complex& operator[](int i) noexcept { return i == 0 ? c0 : c1; }
	constexpr const complex& operator[](int i) const noexcept { return i == 0 ? c0 : c1; }

	spinor& operator+=(const spinor& o) { c0 += o.c0; c1 += o.c1; return *this; }
	spinor& operator-=(const spinor& o) { c0 -= o.c0; c1 -= o.c1; return *this; }
	spinor& operator*=(complex s) { c0 *= s; c1 *= s; return *this; }

	bool finite() const noexcept {
		return std::isfinite(c0.real()) && std::isfinite(c0.imag())
		    && std::isfinite(c1.real()) && std::isfinite(c1.imag());
	}

	friend spinor operator+(spinor a, const spinor& b) { return a += b; }
	friend spinor operator-(spinor a, const spinor& b) { return a -= b; }
	friend spinor operator-(const spinor& a) { return {-a.c0, -a.c1}; }
	friend spinor operator*(complex s, spinor a) { return a *= s; }
	friend spinor operator*(spinor a, complex s) { return a *= s; }
	friend spinor operator*(double s, spinor a) { return a *= s; }
	friend bool operator==(const spinor&, const spinor&) = default;
};

//! Covariant spinor xi_A.
struct dual_spinor {
	complex c0{}, c1{};

	constexpr const complex& operator[](int i) const noexcept { return i == 0 ? c0 : c1; }
	friend bool operator==(const dual_spinor&, const dual_spinor&) = default;
};

//! Spin basis o^A = (0,1), i^A = (1,0).
inline constexpr spinor spin_o{complex{0.0}, complex{1.0}};
inline constexpr spinor spin_i{complex{1.0}, complex{0.0}};

inline constexpr double norm(const spinor& s) {
	return std::sqrt(std::norm(s.c0) + std::norm(s.c1));
}

//! Largest componentwise modulus of a - b.
inline double distance(const spinor& a, const spinor& b) {
	return std::max(std::abs(a.c0 - b.c0), std::abs(a.c1 - b.c1));
}

inline dual_spinor lower(const spinor& s) noexcept { return {-s.c1, s.c0}; }
inline spinor raise(const dual_spinor& d) noexcept { return {d.c1, -d.c0}; }

//! a^A b_A = a^1 b^0 - a^0 b^1.
inline complex contract(const spinor& a, const spinor& b) noexcept {
	return a.c1 * b.c0 - a.c0 * b.c1;
}

inline std::ostream& operator<<(std::ostream& os, const spinor& s) {
	return os << '(' << s.c0 << ", " << s.c1 << ')';
}

//! Dense complex 2x2 matrix, row-major: (r, c).
struct mat2 {
	std::array<complex, 4> a{};

	static constexpr mat2 identity() { return {{complex{1.0}, complex{}, complex{}, complex{1.0}}}; }
	static constexpr mat2 diag(complex d0, complex d1) { return {{d0, complex{}, complex{}, d1}}; }

	constexpr complex& operator()(int r, int c) noexcept { return a[2 * r + c]; }
	constexpr const complex& operator()(int r, int c) const noexcept { return a[2 * r + c]; }

	mat2& operator+=(const mat2& o) { for (int i = 0; i < 4; ++i) a[i] += o.a[i]; return *this; }
	mat2& operator-=(const mat2& o) { for (int i = 0; i < 4; ++i) a[i] -= o.a[i]; return *this; }
	mat2& operator*=(complex s) { for (auto& v : a) v *= s; return *this; }

	complex trace() const { return a[0] + a[3]; }
	complex det() const { return a[0] * a[3] - a[1] * a[2]; }
	mat2 adjoint() const { return {{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}}; }
	mat2 transpose() const { return {{a[0], a[2], a[1], a[3]}}; }

	friend mat2 operator+(mat2 x, const mat2& y) { return x += y; }
	friend mat2 operator-(mat2 x, const mat2& y) { return x -= y; }
	friend mat2 operator*(complex s, mat2 x) { return x *= s; }
	friend mat2 operator*(double s, mat2 x) { return x *= s; }
	friend mat2 operator*(const mat2& x, const mat2& y) {
		return {{x(0, 0) * y(0, 0) + x(0, 1) * y(1, 0), x(0, 0) * y(0, 1) + x(0, 1) * y(1, 1),
		         x(1, 0) * y(0, 0) + x(1, 1) * y(1, 0), x(1, 0) * y(0, 1) + x(1, 1) * y(1, 1)}};
	}
	friend spinor operator*(const mat2& m, const spinor& s) {
		return {m(0, 0) * s.c0 + m(0, 1) * s.c1, m(1, 0) * s.c0 + m(1, 1) * s.c1};
	}
	friend bool operator==(const mat2&, const mat2&) = default;
};

//! Largest componentwise modulus of x - y.
inline double distance(const mat2& x, const mat2& y) {
	double d = 0.0;
	for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
	return d;
}

inline double hermitian_residual(const mat2& h) { return distance(h, h.adjoint()); }

//! Commutator [x, y].
inline mat2 commutator(const mat2& x, const mat2& y) { return x * y - y * x; }

//! Eigenvalues of a Hermitian 2x2 matrix, ascending.
inline std::array<double, 2> hermitian_eigenvalues(const mat2& h) {
	const double half_tr = 0.5 * (h(0, 0).real() + h(1, 1).real());
	const double half_diff = 0.5 * (h(0, 0).real() - h(1, 1).real());
	const double r = std::hypot(half_diff, std::abs(h(0, 1)));
	return {half_tr - r, half_tr + r};
}

/// Exact exponential of a traceless 2x2 matrix.
///
/// For tr A = 0, A^2 = -det(A) I, so exp(A) = cosh(l) I + sinh(l)/l A with
/// l^2 = -det A.  The series form is used near l = 0.
inline mat2 expm_traceless(const mat2& m) {
	const complex l = std::sqrt(-m.det());
	complex c, s_over_l;
	if (std::abs(l) < 1e-4) {
		const complex l2 = l * l;
		c = 1.0 + l2 / 2.0 + l2 * l2 / 24.0 + l2 * l2 * l2 / 720.0;
		s_over_l = 1.0 + l2 / 6.0 + l2 * l2 / 120.0 + l2 * l2 * l2 / 5040.0;
	} else {
		c = std::cosh(l);
		s_over_l = std::sinh(l) / l;
	}
	return c * mat2::identity() + s_over_l * m;
}

//! Real four-vector (t, x, y, z), natural units.
struct four_vector {
	double t{}, x{}, y{}, z{};

	constexpr double& operator[](int i) noexcept {
		return i == 0 ? t : i == 1 ? x : i == 2 ? y : z;
	}
	constexpr const double& operator[](int i) const noexcept {
		return i == 0 ? t : i == 1 ? x : i == 2 ? y : z;
	}

	four_vector& operator+=(const four_vector& o) { t += o.t; x += o.x; y += o.y; z += o.z; return *this; }
	four_vector& operator-=(const four_vector& o) { t -= o.t; x -= o.x; y -= o.y; z -= o.z; return *this; }
	four_vector& operator*=(double s) { t *= s; x *= s; y *= s; z *= s; return *this; }

	vec3 spatial() const { return {x, y, z}; }

	friend four_vector operator+(four_vector a, const four_vector& b) { return a += b; }
	friend four_vector operator-(four_vector a, const four_vector& b) { return a -= b; }
	friend four_vector operator*(double s, four_vector a) { return a *= s; }
	friend four_vector operator*(four_vector a, double s) { return a *= s; }
	friend bool operator==(const four_vector&, const four_vector&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const four_vector& v) {
	return os << '(' << v.t << ", " << v.x << ", " << v.y << ", " << v.z << ')';
}

//! Diagonal of the metric, (+,-,-,-).
constexpr double metric(int mu) noexcept { return mu == 0 ? 1.0 : -1.0; }

inline double minkowski_dot(const four_vector& a, const four_vector& b) {
	return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}
inline double minkowski_norm(const four_vector& v) { return minkowski_dot(v, v); }

inline double distance(const four_vector& a, const four_vector& b) {
	double d = 0.0;
	for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
	return d;
}

inline double spatial_norm(const four_vector& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

inline double dot(const vec3& a, const vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline vec3 cross(const vec3& a, const vec3& b) {
	return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double length(const vec3& a) { return std::sqrt(dot(a, a)); }

inline mat2 hermitian_of(const four_vector& v) {
	const double k = 1.0 / sqrt2;
	return {{complex{k * (v.t + v.z)}, k * complex{v.x, v.y},
	         k * complex{v.x, -v.y}, complex{k * (v.t - v.z)}}};
}

//! Inverse of hermitian_of; throws non_hermitian if |H - H^+| > tol.
inline four_vector fourvector_of(const mat2& h, double tol = 1e-10) {
	if (const double r = hermitian_residual(h); r > tol)
		throw non_hermitian("fourvector_of: matrix is not Hermitian (residual " + std::to_string(r) + ")");
	const double k = 1.0 / sqrt2;
	const double sum = h(0, 0).real(), diff = h(1, 1).real();
	// average the off-diagonal pair so the map stays exact on its image
	const complex off = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
	return {k * (sum + diff), sqrt2 * off.real(), sqrt2 * off.imag(), k * (sum - diff)};
}

//! M^{AA'} = a^A conj(b^{A'}).
inline mat2 outer(const spinor& a, const spinor& b) {
	return {{a.c0 * std::conj(b.c0), a.c0 * std::conj(b.c1),
	         a.c1 * std::conj(b.c0), a.c1 * std::conj(b.c1)}};
}

//! Infinitesimal SL(2,C) parameters: boosts omega and rotations theta.
struct sl2c_generator {
	vec3 omega{};
	vec3 theta{};
};

/// Matrix (d_alpha . sigma)_B^A with d_alpha = (omega + i theta)/2, in the
/// row-B, column-A layout
///   [ a3        a1 + i a2 ]
///   [ a1 - i a2    -a3    ]
/// Acting on a spinor from the right, xi^A -> xi^B G_B^A.
inline mat2 generator_matrix(const sl2c_generator& g) {
	std::array<complex, 3> alpha;
	for (int k = 0; k < 3; ++k) alpha[k] = 0.5 * complex{g.omega[k], g.theta[k]};
	return {{alpha[2], alpha[0] + imag_unit * alpha[1], alpha[0] - imag_unit * alpha[1], -alpha[2]}};
}

} // namespace spindyn
