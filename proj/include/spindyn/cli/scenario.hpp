#pragma once

// Scenario files: JSON description of a particle, its initial spinors (given
// directly or through a momentum and spin axis), the field and the integrator.
//
// {
//   "particle":   {"charge": 1, "mass": 1},
//   "initial":    {"spinors": {"pi": [[re, im], [re, im]], "eta": [[re, im], [re, im]]}}
//              or {"momentum": [t, x, y, z], "spin_axis": [x, y, z], "phase": 0},
//   "field":      {"kind": "constant", "E": [x, y, z], "B": [x, y, z]}
//              or {"kind": "potential", "offset": [4], "gradient": [[4] x 4], "h": 1e-4},
//   "integrator": {"step": 1e-3, "method": "rk4", "record_every": 1},
//   "tau_end":    10
// }
//
// A potential field is A_a(x) = offset_a + gradient_ab x^b (covariant components).

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"

#include "spindyn/dynamics.hpp"
#include "spindyn/field.hpp"
#include "spindyn/rest_frame.hpp"

namespace spindyn::cli {

using json = nlohmann::json;

//! Invalid or missing scenario content; the message names the offending field.
class config_error : public error {
public:
	using error::error;
};

struct particle_spec {
	double charge = 1.0;
	double mass = 1.0;
	friend bool operator==(const particle_spec&, const particle_spec&) = default;
};

struct momentum_spec {
	four_vector p{};
	vec3 spin_axis{0.0, 0.0, 1.0};
	double phase = 0.0;
	friend bool operator==(const momentum_spec&, const momentum_spec&) = default;
};

struct initial_spec {
	std::optional<std::pair<spinor, spinor>> spinors;
	std::optional<momentum_spec> momentum;
	friend bool operator==(const initial_spec&, const initial_spec&) = default;
};

struct potential_spec {
	four_vector offset{};
	std::array<std::array<double, 4>, 4> gradient{};
	double h = 1e-4;
	friend bool operator==(const potential_spec&, const potential_spec&) = default;
};

struct field_spec {
	field_config::kind type = field_config::kind::constant;
	em_field em{};
	potential_spec potential{};
	friend bool operator==(const field_spec&, const field_spec&) = default;
};

struct scenario {
	particle_spec particle{};
	initial_spec initial{};
	field_spec field{};
	integrator_config integrator{};
	double tau_end = 1.0;

	double K() const { return particle.charge / particle.mass; }

	friend bool operator==(const scenario& a, const scenario& b) {
		return a.particle == b.particle && a.initial == b.initial && a.field == b.field
		    && a.integrator.step == b.integrator.step && a.integrator.scheme == b.integrator.scheme
		    && a.integrator.record_every == b.integrator.record_every && a.tau_end == b.tau_end;
	}
};

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& path) {
	if (!j.is_object() || !j.contains(key)) throw config_error(path + "." + key + ": missing");
	return j.at(key);
}

inline double number(const json& j, const std::string& path) {
	if (!j.is_number()) throw config_error(path + ": expected a number");
	const double v = j.get<double>();
	if (!std::isfinite(v)) throw config_error(path + ": must be finite");
	return v;
}

template <std::size_t N>
std::array<double, N> numbers(const json& j, const std::string& path) {
	if (!j.is_array() || j.size() != N) throw config_error(path + ": expected an array of " + std::to_string(N) + " numbers");
	std::array<double, N> out{};
	for (std::size_t i = 0; i < N; ++i) out[i] = number(j[i], path + "[" + std::to_string(i) + "]");
	return out;
}

inline spinor spinor_of(const json& j, const std::string& path) {
	if (!j.is_array() || j.size() != 2) throw config_error(path + ": expected [[re, im], [re, im]]");
	const auto c0 = numbers<2>(j[0], path + "[0]");
	const auto c1 = numbers<2>(j[1], path + "[1]");
	return {complex{c0[0], c0[1]}, complex{c1[0], c1[1]}};
}

inline json json_of(const spinor& s) {
	return json::array({json::array({s.c0.real(), s.c0.imag()}), json::array({s.c1.real(), s.c1.imag()})});
}

inline four_vector four_of(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }
inline std::array<double, 4> array_of(const four_vector& v) { return {v.t, v.x, v.y, v.z}; }

} // namespace detail

inline scenario parse_scenario(const json& j) {
	using namespace detail;
	scenario sc;

	const json& particle = require(j, "particle", "scenario");
	sc.particle.charge = number(require(particle, "charge", "particle"), "particle.charge");
	sc.particle.mass = number(require(particle, "mass", "particle"), "particle.mass");
	if (!(sc.particle.mass > 0.0)) throw config_error("particle.mass: must be > 0");

	const json& initial = require(j, "initial", "scenario");
	const bool has_spinors = initial.is_object() && initial.contains("spinors");
	const bool has_momentum = initial.is_object() && initial.contains("momentum");
	if (has_spinors == has_momentum)
		throw config_error("initial: exactly one of 'spinors' or 'momentum' must be given");
	if (has_spinors) {
		const json& s = initial.at("spinors");
		sc.initial.spinors = std::pair{spinor_of(require(s, "pi", "initial.spinors"), "initial.spinors.pi"),
		                               spinor_of(require(s, "eta", "initial.spinors"), "initial.spinors.eta")};
	} else {
		momentum_spec m;
		m.p = four_of(numbers<4>(initial.at("momentum"), "initial.momentum"));
		if (!(minkowski_norm(m.p) > 0.0) || !(m.p.t > 0.0))
			throw config_error("initial.momentum: must be timelike and future pointing");
		if (initial.contains("spin_axis")) m.spin_axis = numbers<3>(initial.at("spin_axis"), "initial.spin_axis");
		if (!(length(m.spin_axis) > 0.0)) throw config_error("initial.spin_axis: must be nonzero");
		if (initial.contains("phase")) m.phase = number(initial.at("phase"), "initial.phase");
		sc.initial.momentum = m;
	}

	const json& field = require(j, "field", "scenario");
	const json& kind = require(field, "kind", "field");
	if (kind == "constant") {
		sc.field.type = field_config::kind::constant;
		if (field.contains("E")) sc.field.em.E = numbers<3>(field.at("E"), "field.E");
		if (field.contains("B")) sc.field.em.B = numbers<3>(field.at("B"), "field.B");
	} else if (kind == "potential") {
		sc.field.type = field_config::kind::potential;
		if (field.contains("offset")) sc.field.potential.offset = four_of(numbers<4>(field.at("offset"), "field.offset"));
		const json& g = require(field, "gradient", "field");
		if (!g.is_array() || g.size() != 4) throw config_error("field.gradient: expected a 4x4 array");
		for (std::size_t a = 0; a < 4; ++a)
			sc.field.potential.gradient[a] = numbers<4>(g[a], "field.gradient[" + std::to_string(a) + "]");
		if (field.contains("h")) sc.field.potential.h = number(field.at("h"), "field.h");
		if (!(sc.field.potential.h > 0.0)) throw config_error("field.h: must be > 0");
	} else {
		throw config_error("field.kind: expected 'constant' or 'potential'");
	}

	const json& integ = require(j, "integrator", "scenario");
	sc.integrator.step = number(require(integ, "step", "integrator"), "integrator.step");
	if (!(sc.integrator.step > 0.0)) throw config_error("integrator.step: must be > 0");
	if (integ.contains("method")) {
		const json& m = integ.at("method");
		if (m == "rk4") sc.integrator.scheme = integrator_config::method::rk4;
		else if (m == "euler") sc.integrator.scheme = integrator_config::method::euler;
		else throw config_error("integrator.method: expected 'rk4' or 'euler'");
	}
	if (integ.contains("record_every")) {
		const json& r = integ.at("record_every");
		if (!r.is_number_integer() || r.get<long>() < 1) throw config_error("integrator.record_every: must be an integer >= 1");
		sc.integrator.record_every = r.get<int>();
	}

	sc.tau_end = number(require(j, "tau_end", "scenario"), "tau_end");
	if (!(sc.tau_end > 0.0)) throw config_error("tau_end: must be > 0");
	return sc;
}

inline scenario load_scenario(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw config_error("config: cannot open '" + path + "'");
	json j;
	try {
		in >> j;
	} catch (const json::parse_error& e) {
		throw config_error("config: malformed JSON in '" + path + "': " + e.what());
	}
	return parse_scenario(j);
}

inline json to_json(const scenario& sc) {
	using namespace detail;
	json j;
	j["particle"] = {{"charge", sc.particle.charge}, {"mass", sc.particle.mass}};
	if (sc.initial.spinors) {
		j["initial"] = {{"spinors", {{"pi", json_of(sc.initial.spinors->first)}, {"eta", json_of(sc.initial.spinors->second)}}}};
	} else if (sc.initial.momentum) {
		const auto& m = *sc.initial.momentum;
		j["initial"] = {{"momentum", array_of(m.p)}, {"spin_axis", m.spin_axis}, {"phase", m.phase}};
	}
	if (sc.field.type == field_config::kind::constant) {
		j["field"] = {{"kind", "constant"}, {"E", sc.field.em.E}, {"B", sc.field.em.B}};
	} else {
		const auto& p = sc.field.potential;
		j["field"] = {{"kind", "potential"}, {"offset", array_of(p.offset)}, {"gradient", p.gradient}, {"h", p.h}};
	}
	j["integrator"] = {{"step", sc.integrator.step},
	                   {"method", sc.integrator.scheme == integrator_config::method::rk4 ? "rk4" : "euler"},
	                   {"record_every", sc.integrator.record_every}};
	j["tau_end"] = sc.tau_end;
	return j;
}

inline field_config make_field(const scenario& sc) {
	if (sc.field.type == field_config::kind::constant) return field_config::constant(sc.field.em);
	const potential_spec p = sc.field.potential;
	return field_config::from_potential(
	    [p](const four_vector& x) {
		    four_vector a = p.offset;
		    for (int i = 0; i < 4; ++i)
			    for (int b = 0; b < 4; ++b) a[i] += p.gradient[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)] * x[b];
		    return a;
	    },
	    p.h);
}

inline particle_state make_initial_state(const scenario& sc) {
	particle_state st;
	if (sc.initial.spinors) {
		st.pi = sc.initial.spinors->first;
		st.eta = sc.initial.spinors->second;
	} else {
		const auto& m = *sc.initial.momentum;
		std::tie(st.pi, st.eta) = spinors_from_momentum(m.p, m.spin_axis, m.phase);
	}
	return st;
}

//! True for a uniform field with E = 0 and B along z.
inline bool is_constant_bz(const scenario& sc) {
	const auto& em = sc.field.em;
	return sc.field.type == field_config::kind::constant && em.E == vec3{0.0, 0.0, 0.0} && em.B[0] == 0.0
	    && em.B[1] == 0.0 && em.B[2] != 0.0;
}

} // namespace spindyn::cli
