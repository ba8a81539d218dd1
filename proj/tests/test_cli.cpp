// Black-box tests of the command-line tool: exit codes, payload
// determinism, survey resume, environment overrides. Invoked as
// `test_cli <path-to-jacring-binary>`.

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "subprocess.hpp"

using nlohmann::json;
using testutil::run_cli;

namespace {

json payload_of(const std::string& out) { return json::parse(out).at("payload"); }

std::set<std::pair<std::string, std::string>> jsonl_records(const std::string& path) {
    std::set<std::pair<std::string, std::string>> records;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto record = json::parse(line);
        records.emplace(record.at("config_hash").get<std::string>(), record.at("payload").dump());
    }
    return records;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::printf("usage: test_cli <jacring-binary>\n");
        return 2;
    }
    const std::string cli = argv[1];
    const auto tmp = std::filesystem::temp_directory_path();

    T_SECTION("hilbert payload and determinism");
    {
        auto a = run_cli(cli, "hilbert --fermat 2 4");
        T_CHECK(a.exit_code == 0);
        auto payload = payload_of(a.out);
        T_CHECK(payload.at("dims") == json::array({1, 3, 6, 7, 6, 3, 1}));
        T_CHECK(payload.at("smooth") == true);
        auto b = run_cli(cli, "hilbert --fermat 2 4");
        T_CHECK(payload_of(b.out).dump() == payload.dump());
        T_CHECK(json::parse(a.out).at("config").dump() == json::parse(b.out).at("config").dump());
    }

    T_SECTION("variation-max payload is identical across worker counts");
    {
        const std::string base = "variation-max --fermat 2 5 --samples 12 --seed 1 --mode sample --threads ";
        auto one = payload_of(run_cli(cli, base + "1").out).dump();
        auto two = payload_of(run_cli(cli, base + "2").out).dump();
        auto eight = payload_of(run_cli(cli, base + "8").out).dump();
        T_CHECK(one == two);
        T_CHECK(one == eight);
    }

    T_SECTION("random source is reproducible from the seed");
    {
        auto a = run_cli(cli, "hilbert --random 2 5 --seed 11");
        auto b = run_cli(cli, "hilbert --random 2 5 --seed 11");
        auto c = run_cli(cli, "hilbert --random 2 5 --seed 12");
        T_CHECK(a.exit_code == 0);
        T_CHECK(json::parse(a.out).at("config").dump() == json::parse(b.out).at("config").dump());
        T_CHECK(json::parse(a.out).at("config").dump() != json::parse(c.out).at("config").dump());
        T_CHECK(payload_of(a.out).at("smooth") == true);
    }

    T_SECTION("exit code 2: parse errors");
    {
        T_CHECK(run_cli(cli, "star --d 5 --k 0").exit_code == 2);  // missing required --n
        T_CHECK(run_cli(cli, "hilbert --fermat 2 4 --primes 15").exit_code == 2);
        T_CHECK(run_cli(cli, "annihilator --fermat 2 4").exit_code == 2);  // no alpha given
        T_CHECK(run_cli(cli, "hilbert --fermat 2 4 --poly-file /nonexistent").exit_code == 2);
        T_CHECK(run_cli(cli, "survey --kind bogus --jsonl /tmp/x.jsonl --d-range 3..4").exit_code == 2);
        T_CHECK(run_cli(cli, "nonsense").exit_code == 2);

        auto bad = tmp / "jacring_cli_bad_poly.txt";
        std::ofstream(bad) << "x0^2 + x1\n";  // inhomogeneous
        T_CHECK(run_cli(cli, "hilbert --poly-file " + bad.string()).exit_code == 2);
    }

    T_SECTION("exit code 3: precondition violations");
    {
        T_CHECK(run_cli(cli, "min-witness --d 4").exit_code == 3);
        T_CHECK(run_cli(cli, "kernel-square --fermat 2 5 --a 6 --e 2").exit_code == 3);  // a + 2e > N
        T_CHECK(run_cli(cli, "slp --ci 4,4,4 --primes 7").exit_code == 3);               // p <= N
        T_CHECK(run_cli(cli, "hilbert --fermat 2 8 --primes 7").exit_code == 3);         // p <= d

        auto cone = tmp / "jacring_cli_cone.txt";
        std::ofstream(cone) << "x0^3\n";
        T_CHECK(run_cli(cli, "pairing --poly-file " + cone.string()).exit_code == 3);  // singular

        // empty survey grid: k range collapses for n > d - 1
        auto empty = tmp / "jacring_cli_empty.jsonl";
        std::filesystem::remove(empty);
        T_CHECK(run_cli(cli, "survey --kind star --n-range 5 --d-range 3..3 --jsonl " + empty.string()).exit_code ==
                3);
    }

    T_SECTION("environment variable supplies the default prime list");
    {
        auto r = run_cli(cli, "hilbert --fermat 2 4", "JACRING_PRIMES=101,103");
        T_CHECK(r.exit_code == 0);
        T_CHECK(payload_of(r.out).at("field") == "F_101");
    }

    T_SECTION("csv flattening");
    {
        auto r = run_cli(cli, "variation-spectrum --fermat 2 5 --samples 10 --seed 4 --csv");
        T_CHECK(r.exit_code == 0);
        T_CHECK(r.out.rfind("rank,count\n", 0) == 0);
        T_CHECK(run_cli(cli, "hilbert --fermat 2 4 --csv").exit_code == 2);  // no table form

        auto w = run_cli(cli, "wlp --fermat 2 4 --csv");
        T_CHECK(w.exit_code == 0);
        T_CHECK(w.out.rfind("k,power,", 0) == 0);
    }

    T_SECTION("--out duplicates the record to a file");
    {
        auto out_path = tmp / "jacring_cli_record.json";
        std::filesystem::remove(out_path);
        auto r = run_cli(cli, "arith-check --d-range 3..5 --out " + out_path.string());
        T_CHECK(r.exit_code == 0);
        std::ifstream in(out_path);
        std::string line;
        T_CHECK(std::getline(in, line) && json::parse(line).at("payload") == payload_of(r.out));
    }

    T_SECTION("survey resume produces the same record set as a fresh run");
    {
        auto resumed = tmp / "jacring_cli_resumed.jsonl";
        auto fresh = tmp / "jacring_cli_fresh.jsonl";
        std::filesystem::remove(resumed);
        std::filesystem::remove(fresh);

        auto first = run_cli(cli, "survey --kind star --d-range 3..4 --jsonl " + resumed.string());
        T_CHECK(first.exit_code == 0);
        auto second = run_cli(cli, "survey --kind star --d-range 3..6 --jsonl " + resumed.string());
        T_CHECK(second.exit_code == 0);
        T_CHECK(payload_of(second.out).at("cells_skipped").get<int>() == 3);  // d=3,4 cells already present

        auto full = run_cli(cli, "survey --kind star --d-range 3..6 --jsonl " + fresh.string());
        T_CHECK(full.exit_code == 0);
        T_CHECK(jsonl_records(resumed.string()) == jsonl_records(fresh.string()));

        // the grid itself is expected all-injective
        std::ifstream in(fresh);
        std::string line;
        int cells = 0;
        bool all_injective = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            ++cells;
            if (json::parse(line).at("payload").at("injective") != true) all_injective = false;
        }
        T_CHECK(cells == 10);
        T_CHECK(all_injective);
    }

    T_SECTION("survey is deterministic across worker counts");
    {
        auto t1 = tmp / "jacring_cli_t1.jsonl";
        auto t8 = tmp / "jacring_cli_t8.jsonl";
        std::filesystem::remove(t1);
        std::filesystem::remove(t8);
        run_cli(cli, "survey --kind slp-ci --vars 2 --exp-max 3 --threads 1 --jsonl " + t1.string());
        run_cli(cli, "survey --kind slp-ci --vars 2 --exp-max 3 --threads 8 --jsonl " + t8.string());
        T_CHECK(jsonl_records(t1.string()) == jsonl_records(t8.string()));
    }

    std::printf("%d checks, %d failures\n", t_checks, t_failures);
    return t_failures == 0 ? 0 : 1;
}
