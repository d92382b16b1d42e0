#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "harness/commands.hpp"
#include "harness/config.hpp"
#include "wavequanta/error.hpp"
#include "wavequanta/parallel.hpp"

namespace {

using namespace wq::harness;

struct Options {
    std::string config;
    std::optional<std::string> out;
    std::optional<unsigned> threads;
    std::optional<std::string> units;
    bool verbose = false;
};

std::string describe(std::string_view name) {
    if (name == "phonon-sim") return "leapfrog run of the oscillator chain with conservation report";
    if (name == "wigner") return "Wigner grids of a Gaussian action wave against the closed form";
    if (name == "photon-field") return "random transverse photon modes, action wave and field energies";
    if (name == "helicity-check") return "convergence study and residuals of helical potentials";
    if (name == "thermal-relax") return "photon gas relaxation, Planck spectrum and Wien peak";
    return "invariant suite selected by the config's suite key";
}

int fail(std::string_view kind, std::string_view message, int code) {
    const nlohmann::json diag{{"error", kind}, {"message", message}, {"exit_code", code}};
    std::cerr << diag.dump() << '\n';
    return code;
}

int run(Command command, const Options& opt) {
    ScenarioConfig config = load_config(opt.config);
    if (opt.out) config.output_dir = *opt.out;
    if (opt.units) config.units = *opt.units;
    config.validate();
    wq::set_thread_count(opt.threads.value_or(0));

    Logger log;
    if (opt.verbose) log = [](std::string_view line) { std::cerr << line << '\n'; };
    const Outcome outcome = run_command(command, config, log);
    commit(outcome.artifacts, config.output_dir);
    std::cout << outcome.report.dump(2) << '\n';
    return outcome.exit_status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavequanta scenario runner"};
    app.require_subcommand(1);
    Options opt;
    std::optional<Command> chosen;
    for (const std::string& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name, describe(name));
        sub->add_option("--config", opt.config, "scenario config (JSON)")->required();
        sub->add_option("--out", opt.out, "output directory, overrides output_dir");
        sub->add_option("--threads", opt.threads, "worker cap, 0 = all cores");
        sub->add_option("--units", opt.units, "unit preset")->check(CLI::IsMember({"natural", "mev-ps"}));
        sub->add_flag("--verbose", opt.verbose, "progress on stderr");
        sub->callback([&chosen, name] { chosen = command_from_string(name); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), exit_code::parse);
    }

    try {
        return run(*chosen, opt);
    } catch (const ParseError& e) {
        return fail("parse", e.what(), exit_code::parse);
    } catch (const wq::ValidationError& e) {
        return fail("validation", e.what(), exit_code::validation);
    } catch (const wq::NumericError& e) {
        return fail("numeric", e.what(), exit_code::numeric);
    } catch (const std::exception& e) {
        return fail("runtime", e.what(), exit_code::numeric);
    }
}
