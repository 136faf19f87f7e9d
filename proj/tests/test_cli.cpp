// End-to-end tests against the built binary: exit codes, payload
// determinism, checkpoint resume, output formats.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("addcomb-cli-" + std::to_string(::getpid()) + "-" +
                std::to_string(reinterpret_cast<uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static const TempDir io;
    static int counter = 0;
    const auto out_file = io.path / ("out" + std::to_string(counter));
    const auto err_file = io.path / ("err" + std::to_string(counter));
    ++counter;
    const std::string cmd = std::string(ADDCOMB_CLI_PATH) + " " + args + " > " + out_file.string() +
                            " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

json payload_of(const RunResult& r) {
    REQUIRE(r.exit_code == 0);
    return json::parse(r.out).at("payload");
}

}  // namespace

TEST_CASE("verify reports the counterexample cardinalities") {
    const RunResult r = run_cli("verify --set '{0,2,3,4,7,11,12,14}'");
    const json p = payload_of(r);
    CHECK(p["sum_card"] == 26);
    CHECK(p["diff_card"] == 25);
    CHECK(p["class"] == "sum-dominant");
    CHECK(r.out.find("\"sum_card\": 26") != std::string::npos);
    CHECK(r.out.find("\"diff_card\": 25") != std::string::npos);
}

TEST_CASE("exit codes: 0 success, 1 domain, 2 usage") {
    CHECK(run_cli("verify --set '{0,1}'").exit_code == 0);

    // domain errors
    CHECK(run_cli("lift --set '{0,1}' --m 1 --t 2").exit_code == 1);          // m too small
    CHECK(run_cli("census --n 29").exit_code == 1);                            // beyond configured max
    CHECK(run_cli("forms orosz --u 4 --v 2").exit_code == 1);                  // gcd != 1
    CHECK(run_cli("verify --set '{9223372036854775807}'").exit_code == 1);     // sumset overflows

    // usage errors
    CHECK(run_cli("census --n 0").exit_code == 2);
    CHECK(run_cli("census --n 15 --shards 4 --shard-index 4").exit_code == 2);
    CHECK(run_cli("verify --set '{1,1}'").exit_code == 2);    // duplicate element
    CHECK(run_cli("verify --set 'nonsense'").exit_code == 2);
    CHECK(run_cli("verify --no-such-flag").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("forms eval --u 2 --v 1 --set '{0,1}' --format yaml").exit_code == 2);
    CHECK(run_cli("verify --set '{0,1}' --format csv").exit_code == 2);  // csv is census-only
    CHECK(run_cli("census --n 8 --budget-tuples 0").exit_code == 2);     // budgets must be positive

    // unwritable output path is an I/O error naming the path
    const RunResult io = run_cli("verify --set '{0,1}' --out /nonexistent-dir/x.json");
    CHECK(io.exit_code == 1);
    CHECK(io.err.find("/nonexistent-dir/x.json") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical payloads") {
    const std::string cmds[] = {
        "verify --set '{0,2,3,4,7}'",
        "census --n 12 --shards 3",
        "search --max-card 8 --max-diam 10",
        "forms triple --f 1,1 --g 1,-1 --max-diam 8 --max-card 6",
        "poly mod --f 'x+y' --g 'x-y' --m 29 --probe",
        "repfn profile --set '{0,1,2}' --h 2 --from 0 --to 4",
    };
    for (const std::string& cmd : cmds) {
        const RunResult a = run_cli(cmd);
        const RunResult b = run_cli(cmd);
        REQUIRE(a.exit_code == 0);
        REQUIRE(b.exit_code == 0);
        REQUIRE(json::parse(a.out).at("payload").dump() == json::parse(b.out).at("payload").dump());
    }
}

TEST_CASE("census payload is identical across shard counts") {
    const json p1 = payload_of(run_cli("census --n 13"));
    const json p8 = payload_of(run_cli("census --n 13 --shards 8"));
    CHECK(p1.dump() == p8.dump());
}

TEST_CASE("census csv format") {
    const RunResult r = run_cli("census --n 8 --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.starts_with("k,total,sum_dominant,balanced,diff_dominant\n"));
    CHECK(r.out.find("4,70,0,22,48") != std::string::npos);
}

TEST_CASE("census k slice") {
    const json p = payload_of(run_cli("census --n 15 --k 8"));
    REQUIRE(p["per_k"].size() == 1);
    CHECK(p["per_k"][0]["k"] == 8);
    CHECK(p["per_k"][0]["total"] == 6435);
    CHECK(p["per_k"][0]["sum_dominant"] == 2);
    CHECK(p["f_n"] == 2);
}

TEST_CASE("time cap interrupts a census without corrupting it") {
    // the deadline fires at the first in-chunk check, long before 2^18 masks
    const RunResult r = run_cli("census --n 18 --time-cap-secs 0.000001");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out).at("payload").at("complete") == false);
}

TEST_CASE("census witnesses file") {
    TempDir tmp;
    const auto wit = tmp.path / "wit.json";
    const RunResult r = run_cli("census --n 15 --witnesses " + wit.string());
    REQUIRE(r.exit_code == 0);
    const json arr = json::parse(slurp(wit));
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 4);
    CHECK(arr[0] == json::parse("[0,2,3,4,7,11,12,14]"));
}

TEST_CASE("checkpoint interrupt and resume is byte-identical") {
    TempDir tmp;
    const auto ckpt = tmp.path / "c18.ckpt";

    const std::string base_cmd = "census --n 18 --shards 2";
    const RunResult uninterrupted = run_cli(base_cmd);
    REQUIRE(uninterrupted.exit_code == 0);

    // interrupted run: stops halfway through each shard, writes the checkpoint
    const RunResult part =
        run_cli(base_cmd + " --checkpoint " + ckpt.string() + " --limit-masks 70000");
    REQUIRE(part.exit_code == 0);
    CHECK(json::parse(part.out).at("payload").at("complete") == false);
    REQUIRE(std::filesystem::exists(ckpt));

    // resume to completion
    const RunResult resumed = run_cli(base_cmd + " --checkpoint " + ckpt.string());
    REQUIRE(resumed.exit_code == 0);
    CHECK(json::parse(resumed.out).at("payload").dump() ==
          json::parse(uninterrupted.out).at("payload").dump());
    CHECK(json::parse(resumed.out).at("payload").at("f_n") == 66);
}

TEST_CASE("checkpoint mismatches and corruption are refused") {
    TempDir tmp;
    const auto ckpt = tmp.path / "c.ckpt";
    REQUIRE(run_cli("census --n 12 --checkpoint " + ckpt.string() + " --limit-masks 100").exit_code ==
            0);
    // wrong n
    CHECK(run_cli("census --n 11 --checkpoint " + ckpt.string()).exit_code == 1);
    // truncated file
    std::ofstream(ckpt, std::ios::trunc) << "{\"format\":\"addcomb-census-ckpt-1\"";
    CHECK(run_cli("census --n 12 --checkpoint " + ckpt.string()).exit_code == 1);
    // empty file
    std::ofstream(ckpt, std::ios::trunc) << "";
    CHECK(run_cli("census --n 12 --checkpoint " + ckpt.string()).exit_code == 1);
}

TEST_CASE("lift command reproduces the power identities") {
    const json p = payload_of(run_cli("lift --set '{0,2,3,4,7,11,12,14}' --m 29 --t 2 --ratios 2"));
    CHECK(p["lifted"]["cardinality"] == 64);
    CHECK(p["sum_card"] == 676);
    CHECK(p["diff_card"] == 625);
    CHECK(p["ratios"][0]["sum_card"] == 26);
    CHECK(p["ratios"][1]["diff_card"] == 625);
}

TEST_CASE("forms subcommands") {
    const json n = payload_of(run_cli("forms normalize --u -2 --v 4"));
    CHECK(n["normalized"]["u"] == 2);
    CHECK(n["normalized"]["v"] == -1);

    const json e = payload_of(run_cli("forms eval --u 2 --v 1 --set '{0,3,4,6}'"));
    CHECK(e["image_card"] == 13);
    CHECK(e["image"]["cardinality"] == 13);

    const json eco = payload_of(run_cli("forms eval --u 2 --v 1 --set '{0,3,4,6}' --cardinality-only"));
    CHECK(eco["image_card"] == 13);
    CHECK_FALSE(eco.contains("image"));

    const json o = payload_of(run_cli("forms orosz --u 3 --v 1"));
    CHECK(o["a"]["elements"] == json::parse("[0,8,9,12]"));
    CHECK(o["f_a_card"] == 14);
    CHECK(o["g_a_card"] == 13);

    const json t = payload_of(run_cli("forms triple --f 1,1 --g 1,-1 --max-diam 5 --max-card 8"));
    CHECK(t["a"].is_null());
    CHECK(t["b"]["elements"] == json::parse("[0,1,3]"));
    CHECK(t["c"]["elements"] == json::parse("[0,1]"));

    const json na = payload_of(run_cli("forms nary --coeffs 1,-1,2 --set '{0,1}'"));
    CHECK(na["image"]["elements"] == json::parse("[-1,0,1,2,3]"));
}

TEST_CASE("poly subcommands") {
    const json e = payload_of(run_cli("poly eval --f 'C(x,2)' --set '{0,1,2,3}'"));
    CHECK(e["basis"] == "binomial");
    CHECK(e["image"]["elements"] == json::parse("[0,1,3]"));

    const json m = payload_of(run_cli("poly mod --f 'x^2' --m 5 --set '{0,1,2,3,4}'"));
    CHECK(m["image_residues"] == json::parse("[0,1,4]"));

    const json pr = payload_of(run_cli("poly mod --f 'x+y' --g 'x-y' --m 29 --probe"));
    CHECK(pr["status"] == "member");
    CHECK(pr["witness"] == json::parse("[0,2,3,4,7,11,12,14]"));
    CHECK(pr["witness_f_card"] == 26);
    CHECK(pr["witness_g_card"] == 25);

    const json pr2 = payload_of(run_cli("poly mod --f 'x+y' --g 'x-y' --m 2 --probe"));
    CHECK(pr2["status"] == "non-member-exhaustive");

    const json tr = payload_of(run_cli("poly mod --f 'x+y' --g 'x-y' --m 7 --triple"));
    CHECK(tr["a"].is_null());
    CHECK(tr["b"] == json::parse("[0,1,3]"));
    CHECK(tr["c"] == json::parse("[0,1]"));
    CHECK(tr["exhaustive"] == true);

    // binomial-basis polynomial cannot be reduced mod m: domain error
    CHECK(run_cli("poly mod --f 'C(x,2)' --m 5 --set '{0,1}'").exit_code == 1);
}

TEST_CASE("repfn subcommands") {
    const json p = payload_of(run_cli("repfn profile --set '{0,1,2}' --h 2 --from 0 --to 4"));
    CHECK(p["counts"] == json::parse("[1,1,2,1,1]"));

    TempDir tmp;
    const auto target = tmp.path / "t.json";
    std::ofstream(target) << R"({"0":1,"1":1,"2":1,"3":0,"4":0,"-2":0,"-1":0})";
    const json v = payload_of(run_cli("repfn verify --set '{0,1}' --h 2 --target " + target.string()));
    CHECK(v["pass"] == true);

    const json rz = payload_of(run_cli("repfn realize --target " + target.string() + " --bound 3"));
    CHECK(rz["found"] == true);
    CHECK(rz["set"]["elements"] == json::parse("[0,1]"));

    const json rall =
        payload_of(run_cli("repfn realize --target " + target.string() + " --bound 2 --all"));
    CHECK(rall["exhaustive"] == true);
    CHECK(rall["count"] == 1);
    CHECK(rall["sets"][0]["elements"] == json::parse("[0,1]"));

    const json d = payload_of(
        run_cli("repfn density --set '{0,1,4,9,16,25,36,49,64,81,100}' --samples 2,5,10,20,50,100"));
    CHECK(d["kind"] == "finite-sample diagnostic");
    CHECK(d["alpha"].get<double>() > 0.3);
    CHECK(d["alpha"].get<double>() < 0.7);

    CHECK(run_cli("repfn realize --target " + target.string() + " --bound 3 --h 3").exit_code == 1);
}

TEST_CASE("output file and ADDCOMB_OUT_DIR") {
    TempDir tmp;
    const auto out = tmp.path / "verify.json";
    REQUIRE(run_cli("verify --set '{0,1}' --out " + out.string()).exit_code == 0);
    CHECK(json::parse(slurp(out)).at("payload").at("class") == "balanced");

    // relative --out resolves against the env var
    const std::string env_cmd = "ADDCOMB_OUT_DIR=" + tmp.path.string() + " " +
                                std::string(ADDCOMB_CLI_PATH) + " verify --set '{0,1}' --out rel.json";
    REQUIRE(std::system(env_cmd.c_str()) == 0);
    CHECK(std::filesystem::exists(tmp.path / "rel.json"));
}

TEST_CASE("text format is human oriented") {
    const RunResult r = run_cli("verify --set '{0,2,3,4,7,11,12,14}' --format text");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("sum-dominant") != std::string::npos);
    CHECK(r.out.find("26") != std::string::npos);
}
