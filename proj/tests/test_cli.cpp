#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result sim(const std::string& args) {
    const std::string cmd = std::string(GOSSIP_SIM_PATH) + " " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    TempDir() {
        path = fs::temp_directory_path() / ("gossip_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
    fs::path path;
};

}  // namespace

TEST_CASE("gen") {
    auto r = sim("gen --family cycle --n 6");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("6 6 u\n", 0) == 0);
    CHECK(sim("gen --family dstrong --n 4").out.rfind("4 9 d\n", 0) == 0);
    CHECK(sim("gen --family dstrong --n 5").code == 2);
    CHECK(sim("gen --family grid --n 5").code == 2);
    CHECK(sim("gen --n 5").code == 2);
    CHECK(sim("gen --family random --n 30 --p 0.1 --seed 4").out == sim("gen --family random --n 30 --p 0.1 --seed 4").out);
}

TEST_CASE("run") {
    TempDir tmp;
    REQUIRE(sim("gen --family path --n 12 --out " + tmp / "p.txt").code == 0);
    auto a = sim("run --graph " + tmp / "p.txt" + " --process tri --seed 3");
    CHECK(a.code == 0);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["capped"] == false);
    CHECK(j["final_edges"] == 66);
    CHECK(j["rounds"].get<int>() > 0);
    CHECK(sim("run --graph " + tmp / "p.txt" + " --process tri --seed 3").out == a.out);

    CHECK(sim("run --graph " + tmp / "p.txt" + " --process dtwohop --seed 3").code == 2);
    CHECK(sim("run --graph " + tmp / "missing.txt" + " --process tri --seed 3").code != 0);

    REQUIRE(sim("run --graph " + tmp / "p.txt" + " --process twohop --seed 1 --trace " + tmp / "t.csv").code == 0);
    CHECK(slurp(tmp / "t.csv").rfind("round,min_degree,missing_edges,edges_added,smallest_untouched_cut,strong_tie_count\n",
                                     0) == 0);

    REQUIRE(sim("gen --family dstrong --n 8 --out " + tmp / "d.txt").code == 0);
    auto d = sim("run --graph " + tmp / "d.txt" + " --process dtwohop --seed 2 --trace-cut 4 --trace " + tmp / "dt.csv");
    CHECK(d.code == 0);
    CHECK(nlohmann::json::parse(d.out)["final_edges"] == 56);
}

TEST_CASE("sweep") {
    TempDir tmp;
    const std::string base = "sweep --family cycle --process tri --sizes 8,16 --trials 5 --seed 9 --out ";
    REQUIRE(sim(base + tmp / "a.csv").code == 0);
    REQUIRE(sim(base + tmp / "b.csv --serial").code == 0);
    REQUIRE(sim(base + tmp / "c.csv --jobs 3 --self-check").code == 0);
    const auto a = slurp(tmp / "a.csv");
    CHECK(a == slurp(tmp / "b.csv"));
    CHECK(a == slurp(tmp / "c.csv"));
    CHECK(a.rfind("family,n,process,trial,seed,rounds,capped\n", 0) == 0);
    CHECK(std::count(a.begin(), a.end(), '\n') == 11);
    CHECK(fs::exists(tmp / "a.summary.csv"));

    CHECK(sim("sweep --family path --process tri --sizes 10 --trials 2 --seed 1 --max-rounds 1 --out " + tmp / "cap.csv")
              .code == 3);
    CHECK(sim("sweep --family dweak --process dtwohop --sizes 10 --trials 2 --seed 1 --out " + tmp / "x.csv").code == 2);
    CHECK(sim("sweep --family path --process dtwohop --sizes 10 --trials 2 --seed 1 --out " + tmp / "x.csv").code == 2);

    auto s = sim("analyze scaling --in " + tmp / "a.csv");
    CHECK(s.code == 0);
    auto j = nlohmann::json::parse(s.out);
    CHECK(j[0]["family"] == "cycle");
    CHECK(j[0]["sizes"].size() == 2);
}

TEST_CASE("analyze ph-bound") {
    auto ok = sim("analyze ph-bound --n 100 --alpha 9 --eps 0.01");
    CHECK(ok.code == 0);
    auto j = nlohmann::json::parse(ok.out);
    CHECK(j["alpha_constraint"] == true);
    CHECK(j["eps_constraint"] == true);
    CHECK(sim("analyze ph-bound --n 100 --alpha 0 --eps 0.01").code == 1);
}

TEST_CASE("oracle") {
    TempDir tmp;
    {
        std::ofstream(tmp / "p3.txt") << "3 2 u\n0 1\n1 2\n";
    }
    auto e = sim("oracle expected --graph " + tmp / "p3.txt" + " --process twohop");
    CHECK(e.code == 0);
    CHECK(e.out.find("4/3") != std::string::npos);

    auto nm = sim("oracle nonmonotone --max-n 4 --process tri");
    CHECK(nm.code == 0);
    CHECK(nm.out.find("81/32") != std::string::npos);

    auto c = sim("oracle compare --graph " + tmp / "p3.txt" + " --process tri --trials 2000 --seed 1");
    CHECK(c.code == 0);
    auto j = nlohmann::json::parse(c.out);
    CHECK(j["exact_rounds"] == 2.0);
    CHECK(c.out.rfind("{\"graph\":", 0) == 0);

    REQUIRE(sim("gen --family path --n 9 --out " + tmp / "p9.txt").code == 0);
    CHECK(sim("oracle expected --graph " + tmp / "p9.txt" + " --process tri").code == 2);
}
