#include "riesz/cli/commands.hpp"
#include "riesz/cli/config.hpp"
#include "riesz/cli/output.hpp"
#include "riesz/cli/regime.hpp"
#include "riesz/errors.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace riesz;
using namespace riesz::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("riesz_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Writes `text` as config.txt in dir and runs the subcommand with outputs in dir/out.
int run_in(const fs::path& dir, const std::string& cmd, const std::string& text, std::uint64_t seed = 0)
{
    RunManifest m;
    m.subcommand = cmd;
    if (!text.empty()) {
        std::ofstream(dir / "config.txt") << text;
        m.config_path = (dir / "config.txt").string();
    }
    m.out_dir = (dir / "out").string();
    m.seed = seed;
    m.version = "test";
    return run_command(m);
}

bool has(const std::vector<std::string>& v, const std::string& x)
{
    return std::find(v.begin(), v.end(), x) != v.end();
}

} // namespace

TEST(Config, ParsesTypedValuesAndComments)
{
    const auto c = Config::parse("# header\nn = 3\nalpha=0.5  # trailing\neps_list = 0.1, 0.01\nforce_route = kernel\n");
    EXPECT_EQ(c.integer("n", 0), 3);
    EXPECT_EQ(c.real("alpha"), 0.5);
    EXPECT_EQ(c.reals("eps_list", {}), (std::vector<double>{0.1, 0.01}));
    EXPECT_EQ(c.text("force_route", ""), "kernel");
    EXPECT_EQ(c.real("gamma", 2.0), 2.0);
    EXPECT_FALSE(c.has("gamma"));
}

TEST(Config, RejectsMalformedInput)
{
    EXPECT_THROW(Config::parse("no_equals_sign\n"), ParseError);
    EXPECT_THROW(Config::parse("unknown_key = 1\n"), ParseError);
    EXPECT_THROW(Config::parse("n = 3.5\n"), ParseError);
    EXPECT_THROW(Config::parse("alpha = abc\n"), ParseError);
    EXPECT_THROW(Config::parse("alpha = 1\nalpha = 2\n"), ParseError);
    EXPECT_THROW(Config::parse("eps_list = 0.1,,0.2\n"), ParseError);
    EXPECT_THROW(Config::load("/nonexistent/riesz.cfg"), ParseError);
    EXPECT_THROW(parse_real("1.0x", "value"), ParseError);
    EXPECT_THROW(parse_integer("", "value"), ParseError);
}

TEST(Config, CanonicalFormIsOrderIndependent)
{
    const auto a = Config::parse("n = 3\nalpha = 1\n");
    const auto b = Config::parse("alpha=1\n\n  n=3 # same\n");
    EXPECT_EQ(a.canonical(), b.canonical());
    EXPECT_EQ(Config::parse(a.canonical()).canonical(), a.canonical());
}

TEST(Output, Sha256KnownVectors)
{
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Output, RealsUseSeventeenDigits)
{
    EXPECT_EQ(format_real(0.1), "0.10000000000000001");
    EXPECT_EQ(format_real(NAN), "nan");
    EXPECT_EQ(format_real(-INFINITY), "-inf");
    EXPECT_EQ(parse_real(format_real(1.0 / 3.0), "x"), 1.0 / 3.0);
}

TEST(Output, JsonDocumentsParse)
{
    JsonObject inner;
    inner.add("x", 1.5).add("label", "a \"quoted\"\nline");
    JsonObject body;
    body.add("n", 3).add("ok", true).add("values", std::vector<double>{1.0, NAN}).add("inner", inner);
    body.add("list", std::vector<JsonObject>{inner, inner}).add_null("missing");
    const auto doc = nlohmann::json::parse(render_json({"1.2.3", "abcd", "steady"}, body));
    EXPECT_EQ(doc["header"]["program"], "riesz_gas");
    EXPECT_EQ(doc["header"]["version"], "1.2.3");
    EXPECT_EQ(doc["header"]["manifest"], "abcd");
    EXPECT_EQ(doc["header"]["command"], "steady");
    EXPECT_EQ(doc["data"]["n"], 3);
    EXPECT_TRUE(doc["data"]["values"][1].is_null());
    EXPECT_EQ(doc["data"]["inner"]["label"], "a \"quoted\"\nline");
    EXPECT_EQ(doc["data"]["list"].size(), 2u);
    EXPECT_TRUE(doc["data"]["missing"].is_null());
}

TEST(Output, CsvCarriesTheStampLine)
{
    CsvTable t({"a", "b"});
    t.row({1.0, 2.0});
    const auto text = t.render({"0.1.0", "ff00", "kernel-table"});
    EXPECT_EQ(text.substr(0, text.find('\n')), "# riesz_gas 0.1.0 command=kernel-table manifest=ff00");
    EXPECT_NE(text.find("\na,b\n1,2\n"), std::string::npos);
}

TEST(Regime, CoulombPolytropeIsFullyCovered)
{
    const auto r = validate_regime({3, 1.0, 1, 2.0}, 1.0, std::nullopt);
    EXPECT_EQ(r.energy_case, 3);
    EXPECT_NEAR(r.bd_gamma_threshold, 1.8, 1e-15);
    EXPECT_TRUE(has(r.bd_entropy, "gamma_threshold"));
    EXPECT_TRUE(has(r.bd_entropy, "repulsive_or_coulomb"));
    EXPECT_TRUE(r.stability_regime);
    EXPECT_TRUE(r.covered());
    EXPECT_FALSE(r.subcritical_band);
}

TEST(Regime, SubcriticalBandNeedsTheMassCheck)
{
    const auto r = validate_regime({3, 1.0, 1, 1.25}, 1e-4, 1e-4);
    EXPECT_EQ(r.energy_case, 2);
    EXPECT_TRUE(r.subcritical_band);
    ASSERT_TRUE(r.critical_mass.has_value());
    EXPECT_GT(*r.critical_mass, 1e-4);
    EXPECT_EQ(r.mass_below_critical, true);
    EXPECT_FALSE(r.stability_regime);
    // The critical mass shrinks as the energy grows, so the same mass falls outside case 2.
    const auto heavy = validate_regime({3, 1.0, 1, 1.25}, 1e-4, 0.5);
    EXPECT_LT(*heavy.critical_mass, *r.critical_mass);
    EXPECT_EQ(heavy.mass_below_critical, false);
    EXPECT_EQ(heavy.energy_case, 0);
    EXPECT_FALSE(heavy.warnings.empty());
    EXPECT_FALSE(validate_regime({3, 1.0, 1, 1.25}, 1e-4, std::nullopt).mass_below_critical.has_value());
}

TEST(Regime, WarnsNearTheUpperAlphaEdge)
{
    const auto r = validate_regime({3, 1.999, 1, 2.0}, 1.0, std::nullopt);
    EXPECT_NEAR(r.gamma_lower_bound, 1000.0, 1e-6);
    EXPECT_FALSE(r.gamma_hypothesis);
    EXPECT_FALSE(r.warnings.empty());
    bool blows_up = false;
    for (const auto& w : r.warnings) blows_up |= w.find("blows up") != std::string::npos;
    EXPECT_TRUE(blows_up);
}

TEST(Commands, ExitCodes)
{
    const auto dir = scratch("exit");
    EXPECT_EQ(run_in(dir, "simulate", ""), 2);
    EXPECT_EQ(run_in(dir, "steady", "n = 3\nalpha = 1\nbogus = 2\n"), 2);
    EXPECT_EQ(run_in(dir, "critical-mass", "n = 3\nalpha = 1\ngamma = 2\n"), 2);
    EXPECT_EQ(run_in(dir, "critical-mass", "n = 3\nalpha = 1\ngamma = 1.3333333333333333\n"), 0);
    EXPECT_EQ(run_in(dir, "phase-diagram", ""), 0);
    RunManifest m;
    m.subcommand = "no-such-command";
    EXPECT_EQ(run_command(m), 2);
}

TEST(Commands, PhaseDiagramRows)
{
    const auto dir = scratch("phase");
    ASSERT_EQ(run_in(dir, "phase-diagram", "n_min = 18\nn_max = 21\n"), 0);
    const auto text = slurp(dir / "out" / "phase_diagram.csv");
    EXPECT_NE(text.find("\n19,0,nan,nan\n"), std::string::npos);
    EXPECT_NE(text.find("\n20,1,4,5\n"), std::string::npos);
}

TEST(Commands, OutputsAreByteIdenticalAcrossRuns)
{
    const std::string cfg = "n = 3\nalpha = 1\ngamma = 2\nmass = 1\ngrid_nodes = 120\nradii = 0.5, 1, 2\n";
    for (const std::string cmd : {"steady", "kernel-table", "critical-mass"}) {
        const auto a = scratch("det_a"), b = scratch("det_b");
        const std::string text = cmd == "critical-mass" ? "n = 3\nalpha = 1\ngamma = 1.25\nenergy = 0.5\n" : cfg;
        ASSERT_EQ(run_in(a, cmd, text, 7), 0) << cmd;
        ASSERT_EQ(run_in(b, cmd, text, 7), 0) << cmd;
        std::size_t files = 0;
        for (const auto& entry : fs::directory_iterator(a / "out")) {
            ++files;
            const auto name = entry.path().filename();
            EXPECT_EQ(slurp(entry.path()), slurp(b / "out" / name)) << cmd << " " << name;
            if (name.extension() == ".json") {
                const auto doc = nlohmann::json::parse(slurp(entry.path()));
                EXPECT_EQ(doc["header"]["command"], cmd);
                EXPECT_EQ(doc["header"]["manifest"].get<std::string>().size(), 64u);
            } else {
                EXPECT_EQ(slurp(entry.path()).rfind("# riesz_gas test command=" + cmd + " manifest=", 0), 0u);
            }
        }
        EXPECT_GT(files, 0u) << cmd;
    }
}

TEST(Commands, ManifestIgnoresOutputDirAndThreads)
{
    const auto c = Config::parse("n = 3\n");
    RunManifest a{"steady", std::nullopt, "/tmp/a", 5, 1, "v"};
    RunManifest b{"steady", std::nullopt, "/tmp/b", 5, 4, "v"};
    EXPECT_EQ(manifest_text(a, c), manifest_text(b, c));
    b.seed = 6;
    EXPECT_NE(manifest_text(a, c), manifest_text(b, c));
}
