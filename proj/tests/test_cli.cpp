#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SHIFTSPACE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[512];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fix(const std::string& name) { return std::string(SHIFTSPACE_FIXDIR) + "/" + name; }

}  // namespace

TEST_CASE("blocks subcommand") {
    auto r = run_cli("blocks --shift edges:" + fix("g1.graph") + " --n 2");
    CHECK(r.code == 0);
    CHECK(r.out == "B_2 (exact): {e.f, e.g, f.e, g.f, g.g}\n");

    auto lines = run_cli("blocks --shift edges:" + fix("g1.graph") + " --n 2 --format lines");
    CHECK(lines.out == "e.f\ne.g\nf.e\ng.f\ng.g\n");

    auto pairs = run_cli("blocks --shift builtin:ex5_18_pairs --n 2 --horizon 3");
    CHECK(pairs.code == 0);
    CHECK(pairs.out ==
          "B_2 (partial at horizon 3): {a1.a1, a1.a2, a1.a3, a2.a2, a3.a3}\n");
}

TEST_CASE("member subcommand") {
    auto yes = run_cli("member --shift builtin:ex5_18_pairs --seq \"a1|(a2)\"");
    CHECK(yes.code == 0);
    CHECK(yes.out == "Yes\n");

    auto no = run_cli("member --shift builtin:ex5_18_pairs --seq \"|(a2.a3)\"");
    CHECK(no.code == 1);
    CHECK(no.out == "No\n");

    auto file_spec = run_cli("member --shift file:" + fix("g1.shift") + " --seq \"|(e.f)\"");
    CHECK(file_spec.code == 0);
    CHECK(file_spec.out == "Yes\n");

    auto empty_in_ray = run_cli("member --shift builtin:ex5_17_ray --seq \"~\"");
    CHECK(empty_in_ray.code == 0);

    auto finite_path = run_cli("member --shift edges:" + fix("h.graph") + " --seq \"m\"");
    CHECK(finite_path.code == 0);
    CHECK(finite_path.out == "Yes\n");
}

TEST_CASE("classify subcommand") {
    CHECK(run_cli("classify --shift edges:" + fix("g1.graph")).out == "FiniteSymbol\n");
    CHECK(run_cli("classify --shift builtin:ex5_17_ray").out == "RowFiniteInfinite\n");
    CHECK(run_cli("classify --shift builtin:ex5_18_pairs").out == "NotRowFinite\n");
    CHECK(run_cli("classify --shift edges:" + fix("h.graph")).out == "NotRowFinite\n");
}

TEST_CASE("metric subcommand") {
    CHECK(run_cli("metric --x \"|(a1)\" --y \"|(a2)\"").out == "1/2^2\n");
    CHECK(run_cli("metric --x \"a1.a2\" --y \"a1.a2\"").out == "0\n");
    CHECK(run_cli("metric --metric D --x \"|(a1)\" --y \"|(a2)\"").out == "1/2^1\n");
    // The boundedness metric rejects finite sequences: input error.
    CHECK(run_cli("metric --metric D --x \"a1\" --y \"|(a2)\"").code == 2);
}

TEST_CASE("compose subcommand round-trips the identity") {
    auto r = run_cli("compose --phi " + fix("id2.blockmap") + " --psi " + fix("id2.blockmap") +
                     " --name id");
    CHECK(r.code == 0);
    CHECK(r.out == "blockmap id window 1\nmap a1 a1\nmap a2 a2\n");
}

TEST_CASE("higher-block subcommand") {
    auto r = run_cli("higher-block --shift edges:" + fix("g1.graph") +
                     " --n 2 --seq \"|(e.f)\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("symbol a1 = e.f\n") != std::string::npos);
    CHECK(r.out.find("image |(a1.a3)\n") != std::string::npos);
    CHECK(r.out.find("roundtrip identity\n") != std::string::npos);
}

TEST_CASE("recode subcommand") {
    auto r = run_cli("recode --shift file:" + fix("two_step.shift"));
    CHECK(r.code == 0);
    CHECK(r.out.find("graph onestep\n") != std::string::npos);
    CHECK(r.out.find("# VerifiedToDepth(3)\n") != std::string::npos);
    // Blocks a1.a1, a1.a2, a2.a1, a2.a2 are the four vertices.
    CHECK(r.out.find("vertex a1\n") != std::string::npos);
    CHECK(r.out.find("vertex a4\n") != std::string::npos);
    // a1.a1 may not be followed by a1.a1 (that would spell a1.a1.a1).
    CHECK(r.out.find("edge a1-a1") == std::string::npos);
    CHECK(r.out.find("edge a1-a2 a1 a2\n") != std::string::npos);
}

TEST_CASE("verify-conjugacy subcommand") {
    const std::string base = "verify-conjugacy --source edges:" + fix("g1.graph") +
                             " --target edges:" + fix("g1_hb2.graph") + " --forward " +
                             fix("phi2.blockmap") + " --backward " + fix("pi2.blockmap");
    auto ok = run_cli(base + " --depth 3");
    CHECK(ok.code == 0);
    CHECK(ok.out == "VerifiedToDepth(3)\n");

    auto with_samples = run_cli(base + " --samples \"|(e.f);|(g);e|(f.e)\"");
    CHECK(with_samples.code == 0);

    // A corrupted unpack map is refuted with a witness.
    auto bad = run_cli("verify-conjugacy --source edges:" + fix("g1.graph") +
                       " --target edges:" + fix("g1_hb2.graph") + " --forward " +
                       fix("phi2.blockmap") + " --backward " + fix("pi2_bad.blockmap"));
    CHECK(bad.code == 1);
    CHECK(bad.out.find("Refuted") != std::string::npos);

    // Swapped legs do not even parse against the declared alphabets.
    auto swapped = run_cli("verify-conjugacy --source edges:" + fix("g1.graph") +
                           " --target edges:" + fix("g1_hb2.graph") + " --forward " +
                           fix("pi2.blockmap") + " --backward " + fix("phi2.blockmap"));
    CHECK(swapped.code == 2);
}

TEST_CASE("ck-image subcommand") {
    auto r = run_cli("ck-image --E " + fix("g1.graph") + " --F " + fix("g1_hb2.graph") +
                     " --phi " + fix("phi2.blockmap") + " --verify --surjectivity");
    CHECK(r.code == 0);
    CHECK(r.out.find("pi(s_e) =\n1 * e-f ; @f\n1 * e-g ; @g\n") != std::string::npos);
    CHECK(r.out.find("pi(p_u) =\n1 * e-f ; e-f\n1 * e-g ; e-g\n") != std::string::npos);
    CHECK(r.out.find("Valid\n") != std::string::npos);
    CHECK(r.out.find("preimage t_e-f: recovered\n") != std::string::npos);
    CHECK(r.out.find("FAILED") == std::string::npos);
}

TEST_CASE("groupoid subcommand") {
    const std::string g = fix("g1.graph");
    auto unit = run_cli("groupoid --graph " + g +
                        " --alpha e --beta @v --gamma \"|(f.e)\"");
    CHECK(unit.code == 0);
    CHECK(unit.out == "(|(e.f), 1, |(f.e))\n");

    auto composed = run_cli("groupoid --graph " + g +
                            " --alpha e --beta @v --gamma \"|(f.e)\"" +
                            " --compose-alpha @v --compose-beta @v --compose-gamma \"|(f.e)\"");
    CHECK(composed.code == 0);
    CHECK(composed.out == "(|(e.f), 1, |(f.e))\n");

    auto mismatch = run_cli("groupoid --graph " + g +
                            " --alpha e --beta @v --gamma \"|(f.e)\"" +
                            " --compose-alpha e --compose-beta @v --compose-gamma \"|(f.e)\"");
    CHECK(mismatch.code == 1);
    CHECK(mismatch.out.find("NotComposable") != std::string::npos);

    auto inverse = run_cli("groupoid --graph " + g +
                           " --alpha e --beta @v --gamma \"|(f.e)\" --inverse");
    CHECK(inverse.out == "(|(f.e), -1, |(e.f))\n");
}

TEST_CASE("input errors exit with code 2") {
    CHECK(run_cli("blocks --shift edges:" + fix("broken.graph") + " --n 1").code == 2);
    CHECK(run_cli("blocks --shift edges:/nonexistent.graph --n 1").code == 2);
    CHECK(run_cli("member --shift builtin:nope --seq \"~\"").code == 2);
    CHECK(run_cli("member --shift builtin:full --seq \"a0\"").code == 2);
    // Unknown flags are errors.
    CHECK(run_cli("classify --shift builtin:full --frobnicate").code == 2);
}
