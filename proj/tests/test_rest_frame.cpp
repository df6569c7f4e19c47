#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spindyn/rest_frame.hpp"

using namespace spindyn;

namespace {

constexpr double pi = std::numbers::pi;
const double r2 = std::sqrt(2.0);

particle_state canonical(double m, double phase = 0.0) {
	const complex a = std::polar(std::sqrt(m / r2), phase);
	particle_state st;
	st.pi = {a, complex{}};
	st.eta = {complex{}, a};
	return st;
}

rest_frame_state phases(double phi0, double phi1, double xi0, double xi1) {
	rest_frame_state rf{};
	rf.phi0 = phi0;
	rf.phi1 = phi1;
	rf.xi0 = xi0;
	rf.xi1 = xi1;
	return rf;
}

//! Random massive state boosted to rest.
particle_state random_rest(oracle::rng& r) { return boost_to_rest(r.massive_state()); }

} // namespace

TEST(BoostToRest, AlreadyAtRest) {
	const particle_state st = canonical(1.3, 0.7);
	const particle_state b = boost_to_rest(st);
	EXPECT_LE(distance(b.pi, st.pi), 1e-14);
	EXPECT_LE(distance(b.eta, st.eta), 1e-14);

	particle_state unit;
	unit.pi = {complex{1}, complex{0}};
	unit.eta = {complex{0}, complex{1}};
	EXPECT_LE(distance(momentum(unit), {r2, 0, 0, 0}), 1e-15);
	EXPECT_LE(distance(boost_to_rest(unit).pi, unit.pi), 1e-15);
	EXPECT_LE(distance(boost_to_rest(unit).eta, unit.eta), 1e-15);
}

TEST(BoostToRest, RandomMovingStates) {
	oracle::rng r(41);
	for (int k = 0; k < 1000; ++k) {
		const particle_state st = r.massive_state(2.0);
		const double m = mass(st);
		const particle_state b = boost_to_rest(st);
		EXPECT_LE(spatial_norm(momentum(b)), 1e-10 * m);
		EXPECT_NEAR(momentum(b).t, m, 1e-10 * m);
		EXPECT_LE(std::abs(mass(b) - m), 1e-12 * m);
	}
}

TEST(BoostToRest, IsPureBoost) {
	// the boost maps the rest-frame p back onto the original p when inverted,
	// and a vector orthogonal to p's direction in the rest frame is untouched
	oracle::rng r(42);
	for (int k = 0; k < 100; ++k) {
		const particle_state st = r.massive_state();
		const four_vector p = momentum(st);
		const vec3 n = p.spatial();
		const vec3 u = cross(n, r.v3());
		const four_vector perp{0.0, u[0], u[1], u[2]};
		const double m = mass(st);
		const double pn = spatial_norm(p);
		const mat2 L = detail::boost_matrix({n[0] / pn, n[1] / pn, n[2] / pn}, std::asinh(pn / m), -1.0);
		const four_vector moved = fourvector_of(L * hermitian_of(perp) * L.adjoint());
		EXPECT_LE(distance(moved, perp), 1e-12 * std::max(1.0, length(u)));
	}
}

TEST(BoostToRest, Massless) {
	particle_state st;
	st.pi = {complex{1}, complex{1}};
	EXPECT_THROW(boost_to_rest(st), massless_state);
}

TEST(PhaseRelation, Examples) {
	EXPECT_NEAR(check_phase_relation(phases(0, 0, 0, -pi)), 0.0, 1e-15);
	EXPECT_NEAR(check_phase_relation(phases(0.3, 1.2, 0.1, 1.0 - pi)), 0.0, 1e-15);
	EXPECT_NEAR(check_phase_relation(phases(0, 0, 0, 0)), pi, 1e-15);
	EXPECT_NEAR(check_phase_relation(phases(0, 0, 0, 3 * pi)), 0.0, 1e-14);
	EXPECT_NEAR(check_phase_relation(phases(0, 0.5, 0, 0)), pi - 0.5, 1e-15);
}

TEST(RestFrameState, ModuliAndPhasesAfterBoost) {
	oracle::rng r(43);
	for (int k = 0; k < 1000; ++k) {
		const rest_frame_state rf = rest_frame_state::from(random_rest(r));
		EXPECT_LE(rf.moduli_residual(), 1e-10);
		ASSERT_TRUE(rf.phases_defined());
		EXPECT_LE(check_phase_relation(rf), 1e-10);
	}
}

TEST(RestFrameState, CanonicalPhasesUndefined) {
	const rest_frame_state rf = rest_frame_state::from(canonical(1.0));
	EXPECT_FALSE(rf.phases_defined());
	EXPECT_EQ(rf.moduli_residual(), 0.0);
}

TEST(NullSplit, CanonicalState) {
	const double m = 2.2;
	const null_split_result ns = null_split(canonical(m, 0.3));
	EXPECT_LE(distance(ns.p_pi, {m / 2, 0, 0, m / 2}), 1e-14);
	EXPECT_LE(distance(ns.p_eta, {m / 2, 0, 0, -m / 2}), 1e-14);
	EXPECT_DOUBLE_EQ(ns.omega, m / 2);
}

TEST(NullSplit, RandomRestStates) {
	oracle::rng r(44);
	for (int k = 0; k < 1000; ++k) {
		const particle_state st = random_rest(r);
		const double m = mass(st);
		const null_split_result ns = null_split(st);
		EXPECT_NEAR(ns.p_pi.t, m / 2, 1e-10 * m);
		EXPECT_NEAR(ns.p_eta.t, m / 2, 1e-10 * m);
		EXPECT_LE(spatial_norm(ns.p_pi + ns.p_eta), 1e-10 * m);
		EXPECT_LE(std::abs(minkowski_norm(ns.p_pi)), 1e-10 * m * m);
		EXPECT_LE(std::abs(minkowski_norm(ns.p_eta)), 1e-10 * m * m);
	}
}

TEST(NullSplit, RequiresRest) {
	oracle::rng r(45);
	EXPECT_THROW(null_split(r.massive_state()), not_at_rest);
	particle_state st;
	st.pi = {complex{1}, complex{0}};
	st.eta = {complex{2}, complex{0}};
	EXPECT_THROW(null_split(st), massless_state);
}

TEST(Polarization, CanonicalState) {
	EXPECT_LE(polarization_check(canonical(1.0)).max(), 1e-14);
	EXPECT_LE(polarization_check(canonical(3.5, 1.2)).max(), 1e-14);
}

TEST(Polarization, RandomRestStates) {
	oracle::rng r(46);
	for (int k = 0; k < 100; ++k) EXPECT_LE(polarization_check(random_rest(r)).max(), 1e-10);
}

TEST(Polarization, ViolationIsReported) {
	// all phases zero: violates the phase relation, so the flagpoles cannot be back to back
	particle_state st;
	st.pi = {complex{0.8}, complex{0.5}};
	st.eta = {complex{0.5}, complex{0.8}};
	ASSERT_GT(mass(st), 0.0);
	const rest_frame_state rf = rest_frame_state::from(st);
	EXPECT_NEAR(check_phase_relation(rf), pi, 1e-15);
	const polarization_report rep = polarization_check(st);
	EXPECT_GT(rep.max(), 0.1);
	EXPECT_GT(rep.pi.opposite_momentum, 0.1);
}

TEST(RestComponents, MatchTetradAtRest) {
	oracle::rng r(47);
	for (int k = 0; k < 200; ++k) {
		const particle_state st = random_rest(r);
		const double m = mass(st);
		const tetrad t = make_tetrad(st);
		const rest_frame_components c = rest_components(rest_frame_state::from(st), m);
		const mat2 v = hermitian_of(t.v), w = hermitian_of(t.w), s = hermitian_of(t.s);
		EXPECT_NEAR(c.v00, v(0, 0).real(), 1e-12);
		EXPECT_NEAR(c.v11, v(1, 1).real(), 1e-12);
		EXPECT_NEAR(c.w00, w(0, 0).real(), 1e-12);
		EXPECT_NEAR(c.w11, w(1, 1).real(), 1e-12);
		EXPECT_NEAR(c.s00, s(0, 0).real(), 1e-12);
		EXPECT_NEAR(c.s11, s(1, 1).real(), 1e-12);
		EXPECT_LE(std::abs(c.s01 - s(0, 1)), 1e-12);
		for (int i = 0; i < 3; ++i) EXPECT_NEAR(c.s[static_cast<std::size_t>(i)], t.s[i + 1], 1e-12);
	}
}

TEST(RestComponents, SpinAlignedWithPiFlagpole) {
	oracle::rng r(48);
	for (int k = 0; k < 200; ++k) {
		const particle_state st = random_rest(r);
		const double m = mass(st);
		const vec3 s = make_tetrad(st).s.spatial();
		const vec3 kp = null_split(st).p_pi.spatial();
		EXPECT_LE(length(cross(s, kp)), 1e-10 * m);
		for (int i = 0; i < 3; ++i) EXPECT_NEAR(s[static_cast<std::size_t>(i)], 2.0 * kp[static_cast<std::size_t>(i)] / m, 1e-10);
	}
}

TEST(RestComponents, TriadMutuallyOrthogonal) {
	oracle::rng r(49);
	for (int k = 0; k < 200; ++k) {
		const tetrad t = make_tetrad(random_rest(r));
		EXPECT_LE(std::abs(dot(t.s.spatial(), t.v.spatial())), 1e-10);
		EXPECT_LE(std::abs(dot(t.s.spatial(), t.w.spatial())), 1e-10);
		EXPECT_LE(std::abs(dot(t.v.spatial(), t.w.spatial())), 1e-10);
	}
}

TEST(PauliForm, CanonicalPatterns) {
	const double k = 1.0 / r2;
	const auto m = pauli_form(canonical(1.0));
	EXPECT_LE(distance(m[0], k * oracle::sigma_z()), 1e-12);
	EXPECT_LE(distance(m[1], k * oracle::sigma_x()), 1e-12);
	EXPECT_LE(distance(m[2], k * mat2{{complex{}, complex{0, 1}, complex{0, -1}, complex{}}}), 1e-12);
	EXPECT_LE(distance(fourvector_of(m[0]), {0, 0, 0, 1}), 1e-12);
	EXPECT_LE(distance(fourvector_of(m[1]), {0, 1, 0, 0}), 1e-12);
	EXPECT_LE(distance(fourvector_of(m[2]), {0, 0, 1, 0}), 1e-12);
}

TEST(PauliForm, CanonicalAlignmentOfAnyState) {
	oracle::rng r(50);
	const double k = 1.0 / r2;
	for (int i = 0; i < 100; ++i) {
		const auto m = pauli_form(r.massive_state(), true);
		EXPECT_LE(distance(m[0], k * oracle::sigma_z()), 1e-12);
		EXPECT_LE(distance(m[1], k * oracle::sigma_x()), 1e-12);
		EXPECT_LE(distance(m[2], -k * oracle::sigma_y()), 1e-12);
	}
}

TEST(PauliForm, Handedness) {
	oracle::rng r(51);
	for (int i = 0; i < 100; ++i) {
		const auto m = pauli_form(r.massive_state());
		const vec3 s = fourvector_of(m[0]).spatial(), v = fourvector_of(m[1]).spatial(), w = fourvector_of(m[2]).spatial();
		const vec3 vw = cross(v, w);
		for (int j = 0; j < 3; ++j) EXPECT_NEAR(s[static_cast<std::size_t>(j)], vw[static_cast<std::size_t>(j)], 1e-10);
		EXPECT_NEAR(length(s), 1.0, 1e-10);
		EXPECT_NEAR(std::abs(fourvector_of(m[0]).t), 0.0, 1e-10);
	}
}

TEST(SpinOperator, EigenvaluesAndTrace) {
	const auto S = spin_operator(canonical(1.0));
	for (const mat2& s : S) {
		const auto ev = hermitian_eigenvalues(s);
		EXPECT_NEAR(ev[0], -1.0 / (2 * r2), 1e-14);
		EXPECT_NEAR(ev[1], 1.0 / (2 * r2), 1e-14);
		EXPECT_LE(std::abs(s.trace()), 1e-14);
	}
}

TEST(SpinOperator, CommutatorsCloseWithNegativeEpsilon) {
	oracle::rng r(52);
	for (int i = 0; i < 20; ++i) {
		const auto S = spin_operator(r.massive_state(), i % 2 == 0);
		// [S_i, S_j] = (i / sqrt 2) e_ijk S_k with e_123 = -1
		const complex c = complex{0, -1.0 / r2};
		EXPECT_LE(distance(commutator(S[0], S[1]), c * S[2]), 1e-12);
		EXPECT_LE(distance(commutator(S[1], S[2]), c * S[0]), 1e-12);
		EXPECT_LE(distance(commutator(S[2], S[0]), c * S[1]), 1e-12);
		for (const mat2& s : S) EXPECT_LE(std::abs(s.trace()), 1e-14);
	}
}

TEST(SpinorsFromMomentum, CanonicalCase) {
	const auto [p, e] = spinors_from_momentum({1, 0, 0, 0}, {0, 0, 1});
	const particle_state c = canonical(1.0);
	EXPECT_LE(distance(p, c.pi), 1e-15);
	EXPECT_LE(distance(e, c.eta), 1e-15);
}

TEST(SpinorsFromMomentum, MomentumRoundTrip) {
	oracle::rng r(53);
	const four_vector fixed{std::sqrt(2.0), 0, 0, 1};
	particle_state st;
	std::tie(st.pi, st.eta) = spinors_from_momentum(fixed, {0, 1, 0});
	EXPECT_LE(distance(momentum(st), fixed), 1e-12);
	for (int k = 0; k < 1000; ++k) {
		const vec3 q = r.v3(3.0);
		const double m = r.uniform(0.2, 3.0);
		const four_vector p{std::sqrt(m * m + dot(q, q)), q[0], q[1], q[2]};
		std::tie(st.pi, st.eta) = spinors_from_momentum(p, r.v3(), r.uniform(-pi, pi));
		EXPECT_LE(distance(momentum(st), p), 1e-12 * std::max(1.0, p.t));
	}
}

TEST(SpinorsFromMomentum, SpinAxisAlignment) {
	particle_state st;
	std::tie(st.pi, st.eta) = spinors_from_momentum({1, 0, 0, 0}, {1, 0, 0});
	EXPECT_LE(distance(make_tetrad(st).s, {0, 1, 0, 0}), 1e-10);

	oracle::rng r(54);
	for (int k = 0; k < 1000; ++k) {
		const vec3 q = r.v3(2.0);
		const four_vector p{std::sqrt(1.0 + dot(q, q)), q[0], q[1], q[2]};
		vec3 axis = r.v3();
		if (k % 10 == 0) axis = {0.0, 1e-3 * r.uniform(), -1.0};
		std::tie(st.pi, st.eta) = spinors_from_momentum(p, axis, r.uniform(-pi, pi));
		const vec3 s = make_tetrad(boost_to_rest(st)).s.spatial();
		const double len = length(axis);
		for (int i = 0; i < 3; ++i) EXPECT_NEAR(s[static_cast<std::size_t>(i)], axis[static_cast<std::size_t>(i)] / len, 1e-10);
	}
}

TEST(SpinorsFromMomentum, DeterministicAndPhased) {
	const four_vector p{2, 0.3, -1, 0.5};
	const auto a = spinors_from_momentum(p, {0.2, 0.3, 0.9}, 0.4);
	const auto b = spinors_from_momentum(p, {0.2, 0.3, 0.9}, 0.4);
	EXPECT_EQ(a, b);
	const auto c = spinors_from_momentum(p, {0.2, 0.3, 0.9}, 0.0);
	EXPECT_LE(distance(std::polar(1.0, 0.4) * c.first, a.first), 1e-14);
}

TEST(SpinorsFromMomentum, Errors) {
	EXPECT_THROW(spinors_from_momentum({1, 2, 0, 0}, {0, 0, 1}), not_timelike);
	EXPECT_THROW(spinors_from_momentum({-2, 0, 0, 0}, {0, 0, 1}), not_timelike);
	EXPECT_THROW(spinors_from_momentum({1, 1, 0, 0}, {0, 0, 1}), not_timelike);
	EXPECT_THROW(spinors_from_momentum({1, 0, 0, 0}, {0, 0, 0}), error);
}
