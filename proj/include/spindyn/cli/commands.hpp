#pragma once

// Subcommands of the spindyn tool.  Each takes its output and diagnostic
// streams explicitly and returns the process exit code.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "spindyn/cli/scenario.hpp"
#include "spindyn/dynamics.hpp"
#include "spindyn/oracle.hpp"
#include "spindyn/rest_frame.hpp"

namespace spindyn::cli {

enum exit_code : int { ok = 0, verification_failed = 1, bad_config = 2, runtime_failure = 3 };

inline constexpr const char* csv_header =
    "tau,E,px,py,pz,s0,s1,s2,s3,v0,v1,v2,v3,w0,w1,w2,w3,x0,x1,x2,x3,mass_residual,max_ortho_residual";

inline constexpr double default_tolerance = 1e-9;

//! SPINDYN_TOL if set, otherwise default_tolerance.
inline double residual_tolerance() {
	const char* env = std::getenv("SPINDYN_TOL");
	if (!env || !*env) return default_tolerance;
	char* end = nullptr;
	const double v = std::strtod(env, &end);
	if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
		throw config_error(std::string("SPINDYN_TOL: expected a positive number, got '") + env + "'");
	return v;
}

//! Runs fn, mapping exceptions to exit codes and messages on err.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
	try {
		return fn();
	} catch (const config_error& e) {
		err << "config error: " << e.what() << '\n';
		return bad_config;
	} catch (const std::exception& e) {
		err << "error: " << e.what() << '\n';
		return runtime_failure;
	}
}

inline std::string format_number(double v) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

inline void write_csv(std::ostream& os, const trajectory_record& rec) {
	os << csv_header << '\n';
	for (const auto& pt : rec) {
		std::string line = format_number(pt.tau);
		const auto add = [&](double v) {
			line += ',';
			line += format_number(v);
		};
		add(pt.p.t);
		add(pt.p.x);
		add(pt.p.y);
		add(pt.p.z);
		for (const four_vector* v : {&pt.s, &pt.v, &pt.w, &pt.x})
			for (int i = 0; i < 4; ++i) add((*v)[i]);
		add(pt.mass_residual);
		add(pt.ortho_residual);
		os << line << '\n';
	}
}

//! Writes to a sibling temporary file, then renames it over path.
template <class Writer>
void write_atomically(const std::filesystem::path& path, Writer&& writer) {
	std::random_device rd;
	std::filesystem::path tmp = path;
	tmp += ".tmp." + std::to_string(rd());
	{
		std::ofstream out(tmp, std::ios::trunc);
		if (!out) throw error("cannot open '" + tmp.string() + "' for writing");
		writer(out);
		out.flush();
		if (!out) {
			std::error_code ec;
			std::filesystem::remove(tmp, ec);
			throw error("write to '" + tmp.string() + "' failed");
		}
	}
	std::filesystem::rename(tmp, path);
}

inline void require_finite(const trajectory_record& rec) {
	for (const auto& pt : rec)
		for (const four_vector* v : {&pt.p, &pt.s, &pt.v, &pt.w, &pt.x})
			for (int i = 0; i < 4; ++i)
				if (!std::isfinite((*v)[i])) throw error("integration produced non-finite values at tau = " + format_number(pt.tau));
}

inline trajectory_record simulate(const scenario& sc) {
	auto rec = integrate(make_initial_state(sc), make_field(sc), sc.K(), sc.integrator, sc.tau_end);
	require_finite(rec);
	return rec;
}

// --- simulate ---------------------------------------------------------------

inline int cmd_simulate(const std::string& config_path, const std::string& out_path, std::ostream& out,
                        std::ostream& err) {
	return guarded(err, [&] {
		const scenario sc = load_scenario(config_path);
		const trajectory_record rec = simulate(sc);
		write_atomically(out_path, [&](std::ostream& os) { write_csv(os, rec); });
		out << "wrote " << rec.size() << " rows to " << out_path << '\n';
		return int{ok};
	});
}

/// Runs every config concurrently, writing <out_dir>/<config stem>.csv.
/// The exit code is the most severe of the individual runs.
inline int cmd_sweep(const std::vector<std::string>& configs, const std::string& out_dir, std::ostream& out,
                     std::ostream& err) {
	namespace fs = std::filesystem;
	std::error_code ec;
	fs::create_directories(out_dir, ec);
	if (ec) {
		err << "error: cannot create '" << out_dir << "': " << ec.message() << '\n';
		return runtime_failure;
	}
	struct outcome {
		int code;
		std::string out, err;
	};
	std::vector<std::future<outcome>> jobs;
	for (const auto& cfg : configs) {
		const fs::path target = fs::path(out_dir) / (fs::path(cfg).stem().string() + ".csv");
		jobs.push_back(std::async(std::launch::async, [cfg, target] {
			std::ostringstream o, e;
			const int code = cmd_simulate(cfg, target.string(), o, e);
			return outcome{code, o.str(), e.str()};
		}));
	}
	int worst = ok;
	for (std::size_t i = 0; i < jobs.size(); ++i) {
		const outcome r = jobs[i].get();
		out << r.out;
		if (!r.err.empty()) err << configs[i] << ": " << r.err;
		worst = std::max(worst, r.code);
	}
	return worst;
}

// --- verify -----------------------------------------------------------------

struct check_result {
	std::string check;
	double residual;
	double tolerance;
	bool pass;
};

struct invariant_report {
	std::vector<check_result> checks;

	void add(std::string name, double residual, double tolerance) {
		checks.push_back({std::move(name), residual, tolerance, std::isfinite(residual) && residual <= tolerance});
	}
	bool passed() const {
		return std::all_of(checks.begin(), checks.end(), [](const check_result& c) { return c.pass; });
	}
	const check_result* find(std::string_view name) const {
		for (const auto& c : checks)
			if (c.check == name) return &c;
		return nullptr;
	}
};

inline json to_json(const invariant_report& r) {
	json arr = json::array();
	for (const auto& c : r.checks)
		arr.push_back({{"check", c.check}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
	return arr;
}

inline void print_report(std::ostream& os, const invariant_report& r) {
	std::size_t w = 5;
	for (const auto& c : r.checks) w = std::max(w, c.check.size());
	os << std::left << std::setw(static_cast<int>(w)) << "check" << "  " << std::setw(12) << "residual" << "  "
	   << std::setw(12) << "tolerance" << "  result\n";
	for (const auto& c : r.checks) {
		os << std::left << std::setw(static_cast<int>(w)) << c.check << "  " << std::scientific << std::setprecision(3)
		   << std::setw(12) << c.residual << "  " << std::setw(12) << c.tolerance << "  " << (c.pass ? "PASS" : "FAIL")
		   << '\n';
	}
	os << std::defaultfloat << (r.passed() ? "all checks passed" : "verification FAILED") << '\n';
}

struct verify_options {
	double tolerance = default_tolerance;
	std::optional<double> perturb;
};

/// Integrates the scenario and evaluates the invariant suite on the result.
///
/// With a perturbation eps the integration stops at tau_end/2, eps*|pi| is
/// added to pi^0, and integration resumes; conserved quantities are still
/// measured against the initial state.
inline invariant_report verify_scenario(const scenario& sc, const verify_options& opt) {
	constexpr double algebraic = 1e-12;
	const double tol = opt.tolerance;
	const double K = sc.K();
	const field_config field = make_field(sc);
	const particle_state initial = make_initial_state(sc);
	const double m0 = mass(initial);
	if (m0 < massless_threshold) throw massless_state("verify: initial state is massless");

	trajectory_record rec;
	particle_state final_state;
	if (opt.perturb) {
		auto first = integrate_with_final(initial, field, K, sc.integrator, 0.5 * sc.tau_end);
		particle_state kicked = first.final_state;
		kicked.pi.c0 += *opt.perturb * norm(kicked.pi);
		auto second = integrate_with_final(kicked, field, K, sc.integrator, sc.tau_end);
		rec = std::move(first.record);
		rec.insert(rec.end(), second.record.begin(), second.record.end());
		final_state = second.final_state;
	} else {
		auto res = integrate_with_final(initial, field, K, sc.integrator, sc.tau_end);
		rec = std::move(res.record);
		final_state = res.final_state;
	}
	require_finite(rec);

	invariant_report r;

	// field construction at the start and end of the worldline
	double gen = 0.0, sym = 0.0, anti = 0.0, map = 0.0;
	for (const four_vector& x : {initial.x, final_state.x}) {
		const field_spinor phi = phi_at(field, x);
		const em_field em = sc.field.type == field_config::kind::constant ? sc.field.em
		                                                                     : em_from_tensor(field_from_potential(field, x));
		gen = std::max(gen, distance(phi_from_generators(em.E, em.B).m, phi.m));
		sym = std::max(sym, phi.symmetry_residual());
		const field_tensor F = tensor_from_bigF(bigF_from_phi(phi));
		anti = std::max(anti, F.antisymmetry_residual());
		const field_tensor direct = sc.field.type == field_config::kind::constant
		                                ? tensor_from_EB(em)
		                                : field_from_potential(field, x);
		double scale = 1.0;
		for (int a = 0; a < 4; ++a)
			for (int b = 0; b < 4; ++b) scale = std::max(scale, std::abs(direct(a, b)));
		map = std::max(map, distance(em_from_tensor(F), em) / scale);
		if (sc.field.type == field_config::kind::potential) map = std::max(map, distance(F, direct) / scale);
	}
	r.add("phi_construction_equivalence", gen, algebraic);
	r.add("field_spinor_symmetry", sym, algebraic);
	r.add("tensor_antisymmetry", anti, algebraic);
	r.add("spinor_tensor_map", map, algebraic);

	// conservation along the recorded trajectory
	double drift = 0.0, shell = 0.0, ortho = 0.0;
	for (const auto& pt : rec) {
		drift = std::max(drift, std::abs(pt.mass - m0) / m0);
		shell = std::max(shell, std::abs(minkowski_norm(pt.p) - m0 * m0) / (m0 * m0));
		ortho = std::max(ortho, pt.ortho_residual);
	}
	r.add("mass_conservation", drift, tol);
	r.add("configured_mass", std::abs(m0 - sc.particle.mass) / sc.particle.mass, tol);
	r.add("mass_shell", shell, tol);
	r.add("tetrad_orthonormality", ortho, tol);

	// dJ/dtau = K F J for p, s and a mixed combination, at both ends
	const auto principle = [&](const std::array<double, 4>& c) {
		double worst = 0.0, bound = std::numeric_limits<double>::infinity();
		for (const particle_state* st : std::array<const particle_state*, 2>{&initial, &final_state}) {
			const tetrad t = make_tetrad(*st);
			const four_vector j = combine(t, c);
			const double jn = std::max({1.0, std::abs(j.t), spatial_norm(j)});
			double fn = 0.0;
			const field_tensor F = tensor_from_bigF(bigF_from_phi(phi_at(field, st->x)));
			for (int a = 0; a < 4; ++a)
				for (int b = 0; b < 4; ++b) fn = std::max(fn, std::abs(K * F(a, b)));
			worst = std::max(worst, evolve_fourvector_check(*st, field, K, c, 1e-4));
			bound = std::min(bound, 1e-6 * jn * std::pow(1.0 + fn, 3));
		}
		return std::pair{worst, bound};
	};
	for (const auto& [name, c] : {std::pair{"geometric_principle_p", std::array{1.0, 0.0, 0.0, 0.0}},
	                              std::pair{"geometric_principle_s", std::array{0.0, 1.0, 0.0, 0.0}},
	                              std::pair{"geometric_principle_combo", std::array{0.5, -1.0, 2.0, 0.75}}}) {
		const auto [res, bound] = principle(c);
		r.add(name, res, bound);
	}

	// rest-frame structure of the final state
	const particle_state rest = boost_to_rest(final_state);
	const double mr = mass(rest);
	const rest_frame_state rf = rest_frame_state::from(rest);
	double structure = std::max(spatial_norm(momentum(rest)) / mr, rf.moduli_residual() / std::sqrt(mr));
	if (rf.phases_defined()) structure = std::max(structure, check_phase_relation(rf));
	r.add("rest_frame_structure", structure, 1e-10);
	const null_split_result ns = null_split(rest);
	r.add("null_split",
	      std::max({std::abs(ns.p_pi.t - 0.5 * mr) / mr, std::abs(ns.p_eta.t - 0.5 * mr) / mr,
	                spatial_norm(ns.p_pi + ns.p_eta) / mr}),
	      1e-10);
	r.add("polarization", polarization_check(rest).max(), 1e-10);

	if (sc.field.type == field_config::kind::constant) {
		const field_tensor F = tensor_from_EB(sc.field.em);
		const auto ref = tensor_integrate(F, K, momentum(initial), sc.integrator.step, sc.tau_end);
		double dev = 0.0;
		for (std::size_t k = 0; k < rec.size(); ++k) {
			const std::size_t i = k + 1 == rec.size() ? ref.size() - 1
			                                          : static_cast<std::size_t>(std::llround(rec[k].tau / sc.integrator.step));
			dev = std::max(dev, distance(rec[k].p, ref[std::min(i, ref.size() - 1)]) / m0);
		}
		r.add("spinor_tensor_trajectory", dev, tol);

		const particle_state exact = propagate_exact(initial, phi_from_EB(sc.field.em), K, sc.tau_end);
		r.add("eta_propagator",
		      std::max(distance(exact.pi, final_state.pi), distance(exact.eta, final_state.eta)) / std::sqrt(m0), tol);
	}

	if (is_constant_bz(sc)) {
		const constant_b_scenario cb{sc.particle.charge, sc.field.em.B[2], sc.particle.mass, initial};
		double dev = 0.0;
		for (const auto& pt : rec) {
			const tetrad t = tetrad_solution(cb, pt.tau);
			dev = std::max({dev, distance(pt.p, t.p) / m0, distance(pt.s, t.s), distance(pt.v, t.v), distance(pt.w, t.w)});
		}
		r.add("closed_form_constant_b", dev, tol);
	}
	return r;
}

inline int cmd_verify(const std::string& config_path, bool as_json, std::optional<double> perturb, std::ostream& out,
                      std::ostream& err) {
	return guarded(err, [&] {
		const scenario sc = load_scenario(config_path);
		if (perturb && !std::isfinite(*perturb)) throw config_error("--perturb: must be finite");
		verify_options opt;
		opt.tolerance = residual_tolerance();
		opt.perturb = perturb;
		const invariant_report r = verify_scenario(sc, opt);
		if (as_json) out << to_json(r).dump(2) << '\n';
		else print_report(out, r);
		return int{r.passed() ? ok : verification_failed};
	});
}

// --- rest-frame -------------------------------------------------------------

inline void print_matrix(std::ostream& os, const std::string& indent, const mat2& m) {
	const auto cell = [](const complex& z) {
		char buf[64];
		std::snprintf(buf, sizeof buf, "%+.6f%+.6fi", z.real(), z.imag());
		return std::string(buf);
	};
	os << indent << "[" << cell(m(0, 0)) << "  " << cell(m(0, 1)) << "]\n";
	os << indent << "[" << cell(m(1, 0)) << "  " << cell(m(1, 1)) << "]\n";
}

inline int cmd_rest_frame(const std::string& config_path, std::ostream& out, std::ostream& err) {
	return guarded(err, [&] {
		const scenario sc = load_scenario(config_path);
		const particle_state st = make_initial_state(sc);
		const double m = mass(st);
		if (m < massless_threshold) throw massless_state("rest-frame: configured state is massless");

		const particle_state rest = boost_to_rest(st);
		const rest_frame_state rf = rest_frame_state::from(rest);
		const null_split_result ns = null_split(rest);
		out << std::setprecision(10);
		out << "mass                 " << m << '\n';
		out << "momentum             " << momentum(st) << '\n';
		out << "rest momentum        " << momentum(rest) << '\n';
		out << "pi (rest)            " << rest.pi << '\n';
		out << "eta (rest)           " << rest.eta << '\n';
		out << "moduli residual      " << rf.moduli_residual() << '\n';
		out << "phase residual       ";
		if (rf.phases_defined()) out << check_phase_relation(rf) << '\n';
		else out << "undefined (a spinor component vanishes)\n";
		out << "omega                " << ns.omega << '\n';
		out << "null split pi        energy " << ns.p_pi.t << "  momentum " << ns.p_pi << '\n';
		out << "null split eta       energy " << ns.p_eta.t << "  momentum " << ns.p_eta << '\n';
		out << "polarization         " << polarization_check(rest).max() << '\n';

		const auto names = {"s", "v", "w"};
		const auto pauli = pauli_form(st, true);
		out << "pauli form (canonical, times sqrt 2):\n";
		std::size_t i = 0;
		for (const char* n : names) {
			out << "  " << n << "\n";
			print_matrix(out, "    ", sqrt2 * pauli[i++]);
		}
		const auto spin = spin_operator(st, true);
		i = 0;
		for (const char* n : names) {
			const auto ev = hermitian_eigenvalues(spin[i++]);
			out << "spin eigenvalues " << n << "   " << ev[0] << "  " << ev[1] << '\n';
		}
		return int{ok};
	});
}

// --- precession -------------------------------------------------------------

inline int cmd_precession(const std::string& config_path, std::ostream& out, std::ostream& err) {
	return guarded(err, [&] {
		const scenario sc = load_scenario(config_path);
		if (!is_constant_bz(sc)) throw error("precession: field must be uniform with E = 0 and B along z");
		const trajectory_record rec = simulate(sc);
		const double expected = sc.particle.charge * sc.field.em.B[2] / sc.particle.mass;

		out << "expected |qB/m|  " << std::setprecision(12) << std::abs(expected) << '\n';
		out << "vector  frequency        |frequency|      rel_deviation    rms_residual\n";
		const std::array<std::pair<const char*, four_vector trajectory_point::*>, 4> fields{
		    {{"p", &trajectory_point::p}, {"s", &trajectory_point::s}, {"v", &trajectory_point::v}, {"w", &trajectory_point::w}}};
		for (const auto& [name, member] : fields) {
			std::vector<precession_sample> samples;
			samples.reserve(rec.size());
			for (const auto& pt : rec) samples.push_back({pt.tau, (pt.*member).x, (pt.*member).y});
			out << std::left << std::setw(8) << name;
			try {
				const precession_fit f = fit_precession(samples);
				const double dev = std::abs(std::abs(f.frequency) - std::abs(expected)) / std::abs(expected);
				char buf[128];
				std::snprintf(buf, sizeof buf, "%-17.10g%-17.10g%-17.3e%.3e", f.frequency, std::abs(f.frequency), dev,
				              f.rms_residual);
				out << buf << '\n';
			} catch (const degenerate_fit&) {
				out << "no transverse component\n";
			}
		}
		const char* sense = rotation_sense * expected > 0.0 ? "counterclockwise" : "clockwise";
		out << "rotation sense   " << sense << " (x + iy ~ exp(" << (rotation_sense * expected > 0.0 ? "+" : "-")
		    << "i |qB/m| tau))\n";
		return int{ok};
	});
}

} // namespace spindyn::cli
