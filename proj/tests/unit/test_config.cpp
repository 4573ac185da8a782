#include <doctest.h>

#include <cstdlib>

#include "brushlab/config.hpp"

using namespace brushlab;

TEST_CASE("config parsing") {
    const auto cfg = parse_config_text(
        "# comment\n"
        "d = 2\n"
        "a = 1,2\n"
        "p = 1.5, 2\n"
        "q = inf\n"
        "N_list = 16,32,64\n"
        "name = democracy\n");

    CHECK(cfg.get_int("d") == 2);
    CHECK(cfg.get_doubles("a") == std::vector<double>{1.0, 2.0});
    CHECK(cfg.get_doubles("p") == std::vector<double>{1.5, 2.0});
    CHECK(std::isinf(cfg.get_double("q")));
    CHECK(cfg.get_ints("N_list") == std::vector<int>{16, 32, 64});
    CHECK(cfg.get("name") == "democracy");
    CHECK(cfg.get_int_or("missing", 7) == 7);
    CHECK(cfg.get_seed() == 1);
}

TEST_CASE("config rejects malformed input") {
    CHECK_THROWS_AS(parse_config_text("novalue\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("= 3\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("a = 1\na = 2\n"), config_error);
    const auto cfg = parse_config_text("d = x\nl = 1,,2\n");
    CHECK_THROWS_AS(cfg.get_int("d"), config_error);
    CHECK_THROWS_AS(cfg.get_doubles("l"), config_error);
    CHECK_THROWS_AS(cfg.get("absent"), config_error);
}

TEST_CASE("unknown keys are rejected against a schema") {
    const auto cfg = parse_config_text("d = 2\nbogus = 1\n");
    CHECK_THROWS_AS(reject_unknown_keys(cfg, {"d"}), config_error);
    reject_unknown_keys(cfg, {"d", "bogus"});  // passes
}

TEST_CASE("thread resolution honors the environment override") {
    const auto cfg = parse_config_text("threads = 3\n");
    unsetenv("BRUSHLAB_THREADS");
    CHECK(resolve_threads(cfg) == 3);
    setenv("BRUSHLAB_THREADS", "5", 1);
    CHECK(resolve_threads(cfg) == 5);
    setenv("BRUSHLAB_THREADS", "junk", 1);
    CHECK_THROWS_AS(resolve_threads(cfg), config_error);
    unsetenv("BRUSHLAB_THREADS");
    const auto none = parse_config_text("d = 2\n");
    CHECK(resolve_threads(none) == 1);
}

TEST_CASE("missing config file") { CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), config_error); }
