#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qswitch/commands.hpp"
#include "qswitch/errors.hpp"

using namespace qswitch;

namespace {

RunConfig resolve(Command c, const ConfigOverrides& flags = {}, const nlohmann::json* file = nullptr,
                  std::optional<std::string> env = std::nullopt) {
  return resolve_config(c, flags, file, env);
}

std::size_t count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

const char* const kZeroSweep11 =
    "s,i_on,i_off,delta_i,a_c\n"
    "0.000000,1.000000,1.000000,0.000000,1.000000\n"
    "0.100000,0.929417,0.929275,0.000142,0.999582\n"
    "0.200000,0.798819,0.797304,0.001515,0.994908\n"
    "0.300000,0.653199,0.647562,0.005637,0.978962\n"
    "0.400000,0.513206,0.499375,0.013831,0.944155\n"
    "0.500000,0.390193,0.362799,0.027394,0.883885\n"
    "0.600000,0.291299,0.243280,0.048019,0.793711\n"
    "0.700000,0.222554,0.144127,0.078428,0.672456\n"
    "0.800000,0.191580,0.068041,0.123538,0.523442\n"
    "0.900000,0.211558,0.018289,0.193269,0.356148\n"
    "1.000000,0.311278,0.000000,0.311278,0.188722\n";

}  // namespace

TEST_CASE("command names") {
  for (auto c : {Command::sweep, Command::capacity, Command::turning_point, Command::nonmarkov, Command::emulate,
                 Command::validate}) {
    CHECK(parse_command(command_name(c)) == c);
  }
  CHECK(command_name(Command::turning_point) == "turning-point");
  CHECK_THROWS_AS(parse_command("plot"), UsageError);
}

TEST_CASE("configuration precedence") {
  SUBCASE("defaults") {
    const RunConfig sweep = resolve(Command::sweep);
    CHECK(sweep.temperatures == std::vector{Temperature::zero(), Temperature::infinite()});
    CHECK(sweep.grid == 101);
    CHECK(sweep.p == 0.5);
    CHECK(sweep.format == OutputFormat::csv);
    const RunConfig emu = resolve(Command::emulate);
    CHECK(emu.temperatures == std::vector{Temperature::infinite()});
    CHECK(emu.shots == 10'000);
    CHECK(emu.trials == 100);
    CHECK(resolve(Command::validate).temperatures.size() == 3);
  }

  SUBCASE("file, then environment, then flags") {
    const auto file = nlohmann::json::parse(R"({
      "physics": {"temperature": ["inf"], "p": 0.3, "s": 0.7},
      "sweep": {"grid": 21},
      "emulate": {"shots": 500, "trials": 7, "seed": 9, "state": "gibbs"},
      "output": {"format": "json", "full_precision": true}
    })");
    RunConfig cfg = resolve(Command::emulate, {}, &file);
    CHECK(cfg.temperatures == std::vector{Temperature::infinite()});
    CHECK(cfg.p == 0.3);
    CHECK(cfg.strength == 0.7);
    CHECK(cfg.grid == 21);
    CHECK(cfg.shots == 500);
    CHECK(cfg.trials == 7);
    CHECK(cfg.seed == 9);
    CHECK(cfg.state == ProbeState::gibbs);
    CHECK(cfg.format == OutputFormat::json);
    CHECK(cfg.full_precision);

    cfg = resolve(Command::emulate, {}, &file, std::string("123"));
    CHECK(cfg.seed == 123);

    ConfigOverrides flags;
    flags.seed = 5;
    flags.p = 0.9;
    flags.temperatures = {"zero", "2.5"};
    flags.format = "csv";
    cfg = resolve(Command::emulate, flags, &file, std::string("123"));
    CHECK(cfg.seed == 5);
    CHECK(cfg.p == 0.9);
    CHECK(cfg.temperatures == std::vector{Temperature::zero(), Temperature::finite(2.5)});
    CHECK(cfg.format == OutputFormat::csv);
    CHECK(cfg.shots == 500);
  }

  SUBCASE("range and syntax errors") {
    ConfigOverrides flags;
    flags.p = 1.2;
    CHECK_THROWS_AS(resolve(Command::sweep, flags), UsageError);
    flags = {};
    flags.strength = -0.1;
    CHECK_THROWS_AS(resolve(Command::capacity, flags), UsageError);
    flags = {};
    flags.grid = 1;
    CHECK_THROWS_AS(resolve(Command::sweep, flags), UsageError);
    flags = {};
    flags.trials = 1;
    CHECK_THROWS_AS(resolve(Command::emulate, flags), UsageError);
    flags = {};
    flags.temperatures = {"-3"};
    CHECK_THROWS_AS(resolve(Command::sweep, flags), UsageError);
    flags = {};
    flags.format = "xml";
    CHECK_THROWS_AS(resolve(Command::sweep, flags), UsageError);
    CHECK_THROWS_AS(resolve(Command::emulate, {}, nullptr, std::string("12abc")), UsageError);
    const auto wrong_type = nlohmann::json::parse(R"({"sweep": {"grid": "many"}})");
    CHECK_THROWS_AS(resolve(Command::sweep, {}, &wrong_type), UsageError);
  }

  SUBCASE("config files on disk") {
    const auto dir = std::filesystem::temp_directory_path() / "qswitch_app_test";
    std::filesystem::create_directories(dir);
    {
      std::ofstream(dir / "good.json") << R"({"sweep": {"grid": 5}})";
      std::ofstream(dir / "bad.json") << "{ not json";
    }
    const auto good = load_config_file(dir / "good.json");
    CHECK(resolve(Command::sweep, {}, &good).grid == 5);
    CHECK_THROWS_AS(load_config_file(dir / "bad.json"), UsageError);
    CHECK_THROWS_AS(load_config_file(dir / "missing.json"), IoError);
    std::filesystem::remove_all(dir);
  }
}

TEST_CASE("number formatting") {
  CHECK(format_fixed(0.1234564) == "0.123456");
  CHECK(format_fixed(-1e-12) == "0.000000");
  CHECK(format_number(0.1, true) == "0.10000000000000001");
  CHECK(format_number(0.1, false) == "0.100000");
}

TEST_CASE("sweep output") {
  ConfigOverrides flags;
  flags.temperatures = {"zero"};
  flags.grid = 11;
  const CommandResult r = run_command(resolve(Command::sweep, flags));
  CHECK(r.exit_code == kExitOk);
  CHECK(r.stdout_text == kZeroSweep11);
  CHECK(r.files.empty());

  SUBCASE("json") {
    flags.format = "json";
    flags.temperatures = {"1"};
    const auto j = nlohmann::json::parse(run_command(resolve(Command::sweep, flags)).stdout_text);
    REQUIRE(j.at("sweeps").size() == 1);
    const auto& rows = j.at("sweeps")[0].at("records");
    REQUIRE(rows.size() == 11);
    CHECK(rows[0].at("i_on").get<double>() == doctest::Approx(1.0));
    CHECK(rows[10].contains("f_coh"));
  }

  SUBCASE("several temperatures to files") {
    flags.temperatures = {"zero", "inf"};
    flags.output = "out/curve.csv";
    const CommandResult multi = run_command(resolve(Command::sweep, flags));
    REQUIRE(multi.files.size() == 2);
    CHECK(multi.files[0].first == "out/curve_zero.csv");
    CHECK(multi.files[1].first == "out/curve_inf.csv");
    CHECK(multi.files[0].second == kZeroSweep11);
  }
}

TEST_CASE("report commands") {
  ConfigOverrides flags;
  flags.temperatures = {"zero"};
  const auto tp = run_command(resolve(Command::turning_point, flags));
  CHECK(tp.exit_code == kExitOk);
  CHECK(tp.stdout_text.find("0.816") != std::string::npos);

  flags.format = "json";
  const auto nm = nlohmann::json::parse(run_command(resolve(Command::nonmarkov, flags)).stdout_text);
  const auto& row = nm.at("non_markovianity").at(0);
  CHECK(std::abs(row.at("n_endpoint").get<double>() - 0.132) <= 0.02);
  CHECK(row.at("monotone_after_tp").get<bool>());

  flags.temperatures = {"inf"};
  flags.strength = 0.6;
  const auto cap = nlohmann::json::parse(run_command(resolve(Command::capacity, flags)).stdout_text);
  CHECK(cap.at("capacity")[0].at("p_star").get<double>() == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("validation battery") {
  const auto lines = run_validation({Temperature::zero(), Temperature::infinite(), Temperature::finite(1.0)}, 11,
                                    false);
  CHECK(lines.size() == 176);
  std::size_t gibbs = 0;
  for (const auto& l : lines) {
    CHECK(l.passed());
    gibbs += l.check == "gibbs_fixed_point";
  }
  CHECK(gibbs == 33);

  std::size_t failed = 0;
  for (const auto& l : run_validation({Temperature::zero()}, 3, true)) failed += !l.passed();
  CHECK(failed > 0);

  ConfigOverrides flags;
  flags.inject_fault = true;
  const auto r = run_command(resolve(Command::validate, flags));
  CHECK(r.exit_code == kExitValidation);
  flags.inject_fault = false;
  const auto ok = run_command(resolve(Command::validate, flags));
  CHECK(ok.exit_code == kExitOk);
  CHECK(count_lines_starting(ok.stdout_text, "gibbs_fixed_point") == 33);
}

TEST_CASE("emulate output is reproducible") {
  ConfigOverrides flags;
  flags.shots = 2000;
  flags.trials = 3;
  flags.seed = 77;
  const RunConfig cfg = resolve(Command::emulate, flags);
  const auto a = run_command(cfg);
  const auto b = run_command(cfg);
  CHECK(a.exit_code == kExitOk);
  CHECK(a.stdout_text == b.stdout_text);

  flags.output = "emu";
  flags.format = "json";
  const auto c = run_command(resolve(Command::emulate, flags));
  const auto d = run_command(resolve(Command::emulate, flags));
  REQUIRE(c.files.size() == 2);
  CHECK(c.files == d.files);
  CHECK(c.files[1].second.rfind("trial,setting,shots,c0", 0) == 0);
  CHECK(count_lines_starting(c.files[1].second, "2,") == kSettings);

  flags.seed = 78;
  CHECK(run_command(resolve(Command::emulate, flags)).files != c.files);
}

TEST_CASE("commit writes files and reports I/O failures") {
  const auto dir = std::filesystem::temp_directory_path() / "qswitch_commit_test";
  std::filesystem::remove_all(dir);
  CommandResult r;
  r.stdout_text = "hello\n";
  r.files = {{(dir / "nested" / "a.csv").string(), "x\n"}};
  std::ostringstream out;
  commit(r, out);
  CHECK(out.str() == "hello\n");
  std::ifstream in(dir / "nested" / "a.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "x");

  std::ofstream(dir / "blocker") << "file";
  r.files = {{(dir / "blocker" / "b.csv").string(), "y\n"}};
  CHECK_THROWS_AS(commit(r, out), IoError);
  std::filesystem::remove_all(dir);
}
