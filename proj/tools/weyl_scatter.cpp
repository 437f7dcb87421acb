#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "weylscatter/commands.hpp"
#include "weylscatter/error.hpp"

using namespace weylscatter;

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumerical = 2, kVerify = 3 };

bool is_config_kind(ErrorKind k) {
    switch (k) {
        case ErrorKind::Config:
        case ErrorKind::NotOperator:
        case ErrorKind::WrongModelKind:
        case ErrorKind::TruncationWarning:
        case ErrorKind::NotHermitian:
        case ErrorKind::InvalidArgument:
            return true;
        default:
            return false;
    }
}

struct Options {
    std::string config;
    std::string out;
    std::string format;
    int jobs = 1;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config, "run configuration (JSON)")->required();
    sub->add_option("--out", o.out, "output file; defaults to outputs.path, then stdout");
    sub->add_option("--format", o.format, "csv or json; defaults to outputs.format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

RunConfig load(const Options& o) {
    RunConfig c = load_config(o.config);
    if (const char* env = std::getenv("WEYL_SCATTER_QUAD_TOL")) {
        char* end = nullptr;
        const double tol = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(tol > 0.0)) {
            throw Error(ErrorKind::Config, "WEYL_SCATTER_QUAD_TOL: expected a positive number, got '" +
                                               std::string(env) + "'");
        }
        c.quad.tol = tol;
    }
    if (!o.format.empty()) c.outputs.format = o.format;
    if (!o.out.empty()) c.outputs.path = o.out;
    return c;
}

template <class F>
void emit(const RunConfig& c, F&& write) {
    if (c.outputs.path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(c.outputs.path);
    if (!out) throw Error(ErrorKind::Config, "cannot write " + c.outputs.path);
    out.imbue(std::locale::classic());
    write(out);
}

int run(const std::string& command, const Options& o) {
    const RunConfig c = load(o);
    if (command == "scatter" || command == "ssf") {
        const ResultTable t = command == "scatter" ? cmd_scatter(c, o.jobs) : cmd_ssf(c, o.jobs);
        emit(c, [&](std::ostream& os) {
            if (c.outputs.format == "json") {
                os << table_to_json(t).dump(2) << '\n';
            } else {
                write_csv(os, t);
            }
        });
        return kOk;
    }
    if (command == "verify") {
        const VerifyReport r = cmd_verify(c, o.jobs);
        emit(c, [&](std::ostream& os) { os << report_to_json(r).dump(2) << '\n'; });
        return r.pass() ? kOk : kVerify;
    }
    const RecoveryResult r = cmd_recover_theta(c);
    emit(c, [&](std::ostream& os) { os << recovery_to_json(r).dump(2) << '\n'; });
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    std::cout.imbue(std::locale::classic());
    CLI::App app{"Scattering matrices and spectral shift functions from matrix Weyl functions"};
    app.require_subcommand(1);
    Options o;
    for (const char* name : {"scatter", "ssf", "verify", "recover-theta"}) {
        add_common(app.add_subcommand(name), o);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, o);
    } catch (const Error& e) {
        std::cerr << "weyl-scatter: " << e.what() << '\n';
        return is_config_kind(e.kind()) ? kConfig : kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "weyl-scatter: " << e.what() << '\n';
        return kNumerical;
    }
}
