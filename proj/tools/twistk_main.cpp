#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "twistk/job.hpp"

namespace {

struct CommonOpts {
    std::string input;
    std::string fixture;
    std::string field;
    std::string policy;
    int degree = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--input", o.input, "job file (sections [field], [algebra A], [algebra B], [twist], [run])");
    cmd->add_option("--fixture", o.fixture, "named fixture (see the catalog command)");
    cmd->add_option("--degree", o.degree, "truncation degree override");
    cmd->add_option("--field", o.field, "coefficient field: Q or Fp:<p>");
    cmd->add_option("--policy", o.policy, "extension policy: unique or canonical");
}

int run(const std::string& name, const CommonOpts& o) {
    twistk::JobSpec job;
    if (!o.input.empty()) {
        std::ifstream in(o.input);
        if (!in) {
            std::cerr << "error: cannot open " << o.input << "\n";
            return 2;
        }
        job = twistk::parse_job(in);
    }
    if (!o.fixture.empty()) job.fixture = o.fixture;
    if (!o.field.empty()) job.field = twistk::FieldSpec::parse(o.field);
    if (o.degree >= 0) {
        job.degree = o.degree;
        job.degree_explicit = true;
    }
    if (!o.policy.empty()) {
        if (o.policy == "unique")
            job.policy = twistk::ExtendPolicy::require_unique;
        else if (o.policy == "canonical")
            job.policy = twistk::ExtendPolicy::take_canonical;
        else {
            std::cerr << "error: policy must be unique or canonical\n";
            return 2;
        }
    }
    std::cout << twistk::run_command(name, job).dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twistk: graded twisting maps, twisted tensor products, and desk-scale Koszulity"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {"verify", "extend", "classify", "uep",
                                               "present", "hilbert", "koszul", "catalog"};
    std::map<std::string, CommonOpts> opts;
    for (const auto& name : commands) {
        auto* sub = app.add_subcommand(name);
        add_common(sub, opts[name]);
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& name : commands) {
        if (app.got_subcommand(name)) {
            try {
                return run(name, opts[name]);
            } catch (const twistk::ParseError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            } catch (const twistk::Error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }
    }
    return 2;
}
