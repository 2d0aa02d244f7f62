// End-to-end smoke test for the command-line tool.  Takes the binary path as
// argv[1], runs each subcommand through a shell, and checks exit codes plus a
// few load-bearing bits of output.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& command) {
    RunResult result;
    const std::string full = command + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    if (pipe == nullptr) return result;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.output.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

int failures = 0;

void check(const std::string& name, bool ok, const std::string& extra = "") {
    std::printf("%s %s%s%s\n", ok ? "ok  " : "FAIL", name.c_str(),
                extra.empty() ? "" : " — ", extra.c_str());
    if (!ok) ++failures;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_smoke <path-to-cli>\n");
        return 2;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";

    {
        const auto r = run_cli(cli + " classify");
        check("classify census", r.exit_code == 0 &&
                                     contains(r.output, "\"total\": 256") &&
                                     contains(r.output, "\"nontrivial\": 80"));
    }
    {
        const auto r = run_cli(cli + " classify --format csv");
        check("classify census csv",
              r.exit_code == 0 && contains(r.output, "256"));
    }
    {
        const auto r = run_cli(cli + " classify --task F:OR,f:XOR");
        check("classify single nontrivial task",
              r.exit_code == 0 && contains(r.output, "nontrivial") &&
                  contains(r.output, "13/16"));
    }
    {
        const auto r = run_cli(cli + " classify --task F:XOR,f:XOR");
        check("classify single trivial task",
              r.exit_code == 0 && contains(r.output, "trivial_two_way"));
    }
    {
        const auto r = run_cli(cli + " quantum verify-table1");
        check("quantum verify-table1",
              r.exit_code == 0 && contains(r.output, "true"));
    }
    {
        const auto r = run_cli(cli + " quantum oblivious --x 10 --y 01");
        check("quantum oblivious run", r.exit_code == 0);
    }
    {
        const auto r = run_cli(
            cli + " quantum search --task F:XOR,f:OR --samples 2000 --seed 7");
        check("quantum search stays below the threshold", r.exit_code == 0);
    }
    {
        const auto r = run_cli(cli + " polygon check --n 5 --model type1");
        check("polygon check pentagon",
              r.exit_code == 0 && contains(r.output, "\"consistent\": true"));
    }
    {
        const auto r = run_cli(cli + " polygon check --n 4 --model type2");
        check("polygon check square type2",
              r.exit_code == 0 && contains(r.output, "clubbed_effects"));
    }
    {
        const auto r =
            run_cli(cli + " nogo verify --n 4 --model type1 --task F:OR,f:XOR");
        check("nogo verify single nontrivial task",
              r.exit_code == 0 &&
                  contains(r.output, "\"all_nontrivial_infeasible\": true"));
    }
    {
        const auto r = run_cli(cli +
                               " nogo verify --n 4 --model type2 --task "
                               "F:XOR,f:XOR");
        check("nogo verify trivial control is feasible",
              r.exit_code == 0 && contains(r.output, "\"feasible_total\": 1"));
    }
    {
        const auto r = run_cli(cli +
                               " simulate --task F:OR,f:XOR --backend "
                               "classical --trials 2000 --seed 3");
        check("simulate classical json",
              r.exit_code == 0 && contains(r.output, "\"empirical\""));
    }
    {
        const auto r = run_cli(cli +
                               " simulate --task F:OR,f:XOR --backend quantum "
                               "--trials 500 --seed 3 --oblivious --format csv");
        check("simulate quantum oblivious csv",
              r.exit_code == 0 &&
                  r.output.rfind("x,y,successes,trials,analytic_p", 0) == 0);
    }
    {
        namespace fs = std::filesystem;
        const fs::path out = fs::temp_directory_path() / "dclc-smoke-report";
        fs::remove_all(out);
        const auto r = run_cli(cli + " report --out \"" + out.string() + "\"");
        int json_files = 0;
        bool index = false;
        if (fs::exists(out)) {
            for (const auto& entry : fs::directory_iterator(out)) {
                if (entry.path().extension() == ".json") ++json_files;
                if (entry.path().filename() == "index.json") index = true;
            }
        }
        check("report bundle", r.exit_code == 0 && index && json_files >= 4,
              "json files: " + std::to_string(json_files));
        fs::remove_all(out);
    }
    {
        const auto r = run_cli(cli + " simulate --task F:OR,f:XOR --backend "
                                     "bogus --trials 10 --seed 1");
        check("unknown backend is a usage error", r.exit_code == 2);
    }
    {
        const auto r = run_cli(cli + " quantum oblivious --x 10");
        check("missing required option is a usage error", r.exit_code == 2);
    }
    {
        const auto r = run_cli(cli + " frobnicate");
        check("unknown subcommand is a usage error", r.exit_code == 2);
    }

    if (failures > 0) {
        std::printf("%d smoke check(s) failed\n", failures);
        return 1;
    }
    std::printf("all smoke checks passed\n");
    return 0;
}
