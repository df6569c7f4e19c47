#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "spindyn/cli/commands.hpp"

namespace {

constexpr const char* units_note =
    "Natural units (c = 1). Charge and mass are in any consistent units; the\n"
    "equations of motion use K = charge / mass. SPINDYN_TOL overrides the\n"
    "trajectory residual tolerance used by verify (default 1e-9).\n"
    "Exit codes: 0 success, 1 verification failure, 2 config error, 3 runtime error.";

} // namespace

int main(int argc, char** argv) {
	namespace sc = spindyn::cli;

	CLI::App app{"Spinor Lorentz-force simulator"};
	app.footer(units_note);
	app.require_subcommand(1);

	std::vector<std::string> configs;
	std::string config, out_path, out_dir;
	bool sweep = false, as_json = false;
	std::optional<double> perturb;

	auto* simulate = app.add_subcommand("simulate", "Integrate a scenario and write its trajectory as CSV");
	simulate->add_option("--config", configs, "Scenario file (several with --sweep)")->required();
	simulate->add_option("--out", out_path, "Output CSV path");
	simulate->add_flag("--sweep", sweep, "Run several scenarios concurrently");
	simulate->add_option("--out-dir", out_dir, "Output directory for --sweep");

	auto* verify = app.add_subcommand("verify", "Run the invariant suite on a scenario");
	verify->add_option("--config", config, "Scenario file")->required();
	verify->add_flag("--json", as_json, "Print the report as JSON");
	verify->add_option("--perturb", perturb, "Kick pi by this relative amount halfway through");

	auto* rest = app.add_subcommand("rest-frame", "Rest-frame analysis of the initial state");
	rest->add_option("--config", config, "Scenario file")->required();

	auto* prec = app.add_subcommand("precession", "Fit precession frequencies in a uniform B field along z");
	prec->add_option("--config", config, "Scenario file")->required();

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return sc::bad_config;
	}

	if (simulate->parsed()) {
		if (sweep) {
			if (out_dir.empty()) {
				std::cerr << "config error: --sweep needs --out-dir\n";
				return sc::bad_config;
			}
			return sc::cmd_sweep(configs, out_dir, std::cout, std::cerr);
		}
		if (configs.size() != 1 || out_path.empty()) {
			std::cerr << "config error: simulate needs exactly one --config and --out (or --sweep)\n";
			return sc::bad_config;
		}
		return sc::cmd_simulate(configs.front(), out_path, std::cout, std::cerr);
	}
	if (verify->parsed()) return sc::cmd_verify(config, as_json, perturb, std::cout, std::cerr);
	if (rest->parsed()) return sc::cmd_rest_frame(config, std::cout, std::cerr);
	return sc::cmd_precession(config, std::cout, std::cerr);
}
