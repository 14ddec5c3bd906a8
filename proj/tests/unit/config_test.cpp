#include <gtest/gtest.h>

#include <filesystem>
#include <numbers>

#include "centralspin/config.hpp"

using namespace centralspin;

namespace {
const std::filesystem::path kConfigs{CENTRALSPIN_TEST_DATA_DIR};
}

TEST(Config, HomogeneousBath) {
    const auto cfg = parse_model_config(R"({"system": {"omega": 2.0, "theta0": 0.5},
                                            "bath": {"n": 4, "omega": 1.5, "lambda": 0.1}})");
    EXPECT_EQ(cfg.central.omega, 2.0);
    EXPECT_EQ(cfg.central.theta0, 0.5);
    EXPECT_EQ(cfg.bath.size(), 4u);
    EXPECT_TRUE(cfg.bath.is_homogeneous());
    EXPECT_EQ(cfg.bath[3].lambda, 0.1);
    EXPECT_TRUE(cfg.bath.all_sigma_x_eigenstates());
}

TEST(Config, HeterogeneousBathFile) {
    const auto cfg = load_model_config(kConfigs / "heterogeneous.json");
    ASSERT_EQ(cfg.bath.size(), 4u);
    EXPECT_FALSE(cfg.bath.is_homogeneous());
    EXPECT_TRUE(cfg.bath.all_sigma_x_eigenstates());
    EXPECT_EQ(cfg.bath[1].amp1, Complex(-0.7071067811865476, 0.0));
    EXPECT_EQ(cfg.bath[3].amp0, Complex(0.0, 0.7071067811865476));
}

TEST(Config, RandomBathIsSeeded) {
    const auto a = load_model_config(kConfigs / "random4.json", 42);
    const auto b = load_model_config(kConfigs / "random4.json", 42);
    const auto c = load_model_config(kConfigs / "random4.json", 43);
    ASSERT_EQ(a.bath.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(a.bath[i].omega, b.bath[i].omega);
        EXPECT_EQ(a.bath[i].lambda, b.bath[i].lambda);
        EXPECT_GT(a.bath[i].omega, 0.0);
        EXPECT_LE(a.bath[i].omega, 2.0);
    }
    EXPECT_NE(a.bath[0].omega, c.bath[0].omega);
}

TEST(Config, RandomStatesAreNormalised) {
    const auto bath = random_bath(8, 9, 2.0, 2.0, true);
    for (const auto& s : bath.spins()) EXPECT_NEAR(std::norm(s.amp0) + std::norm(s.amp1), 1.0, 1e-12);
    EXPECT_FALSE(bath.all_sigma_x_eigenstates());
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_model_config("{not json"), ConfigError);
    EXPECT_THROW(parse_model_config(R"({"bath": {"n": 1, "omega": 1, "lambda": 0}})"), ConfigError);
    EXPECT_THROW(parse_model_config(R"({"system": {"omega": 1, "theta0": 0}})"), ConfigError);
    EXPECT_THROW(parse_model_config(R"({"system": {"omega": 1, "theta0": 4.0},
                                        "bath": {"n": 1, "omega": 1, "lambda": 0}})"),
                 ConfigError);
    EXPECT_THROW(parse_model_config(R"({"system": {"omega": 1, "theta0": 0},
                                        "bath": {"n": 0, "omega": 1, "lambda": 0}})"),
                 ConfigError);
    EXPECT_THROW(parse_model_config(R"({"system": {"omega": 1, "theta0": 0},
                                        "bath": {"n": 2, "omega": 1}})"),
                 ConfigError);
    EXPECT_THROW(parse_model_config(R"({"system": {"omega": 1, "theta0": 0},
                                        "bath": {"spins": [[1, 0.1, 1, 0, 1, 0]]}})"),
                 ConfigError);
    EXPECT_THROW(parse_model_config(R"({"system": {"omega": 1, "theta0": 0},
                                        "bath": {"spins": [[1, 0.1, 1, 0]]}})"),
                 ConfigError);
    EXPECT_THROW(load_model_config(kConfigs / "does_not_exist.json"), ConfigError);
}

TEST(Config, Defaults) {
    const auto cfg = default_model_config();
    EXPECT_EQ(cfg.bath.size(), 10u);
    EXPECT_EQ(cfg.bath[0].lambda, 0.05);
    EXPECT_EQ(cfg.central.theta0, std::numbers::pi / 2);
}
