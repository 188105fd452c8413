// Command-line entry point. Exit status: 0 = all checks passed or
// not-applicable, 1 = at least one failed check, 2 = configuration or runtime
// error.

#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "rhf/runner.hpp"

namespace {

void usage(std::ostream& os) {
    os << "usage: rhf_lab [--config PATH] [--mode MODE] [--seed N] [--out DIR] "
          "[key=value ...]\n"
          "modes: verify-identities | flow | convergence | bounds-only\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::string config_path;
    std::vector<std::string> overrides;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        const auto need_value = [&](const char* flag) -> std::string {
            if (i + 1 >= argc) {
                std::cerr << "error: " << flag << " requires a value\n";
                std::exit(2);
            }
            return argv[++i];
        };
        if (arg == "--help" || arg == "-h") {
            usage(std::cout);
            return 0;
        } else if (arg == "--config") {
            config_path = need_value("--config");
        } else if (arg == "--mode") {
            overrides.push_back("mode=" + need_value("--mode"));
        } else if (arg == "--seed") {
            overrides.push_back("seed=" + need_value("--seed"));
        } else if (arg == "--out") {
            overrides.push_back("out=" + need_value("--out"));
        } else if (arg.find('=') != std::string::npos) {
            overrides.push_back(arg);
        } else {
            std::cerr << "error: unrecognized argument '" << arg << "'\n";
            usage(std::cerr);
            return 2;
        }
    }

    try {
        const rhf::RunConfig cfg = rhf::parse_config(config_path, overrides);
        return rhf::run(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
