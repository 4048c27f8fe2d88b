#include "gestream/config.hpp"
#include "gestream/prob.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

using namespace gestream;

namespace {

Vector vec(std::initializer_list<double> xs)
{
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

bool mentions(const std::vector<std::string>& violations, const std::string& needle)
{
    return std::any_of(violations.begin(), violations.end(),
                       [&](const auto& v) { return v.find(needle) != std::string::npos; });
}

} // namespace

TEST(ValidateConfig, AcceptsReferenceOperatingPoint)
{
    PipelineConfig cfg;
    cfg.detector_window = 8;
    cfg.classifier_window = 32;
    cfg.stride = 1;
    cfg.filter_size = 4;
    cfg.num_classes = 83;
    EXPECT_NO_THROW(validate_config(cfg));
    EXPECT_TRUE(config_violations(cfg).empty());
}

TEST(ValidateConfig, DefaultsMatchReferenceOperatingPoint)
{
    const PipelineConfig cfg;
    EXPECT_EQ(cfg.detector_window, 8);
    EXPECT_EQ(cfg.classifier_window, 32);
    EXPECT_EQ(cfg.stride, 1);
    EXPECT_EQ(cfg.filter_size, 4);
    EXPECT_EQ(cfg.filter_kind, FilterKind::Median);
    EXPECT_DOUBLE_EQ(cfg.tau_late, 0.15);
    EXPECT_DOUBLE_EQ(cfg.sigmoid_slope, 0.2);
}

TEST(ValidateConfig, ZeroDetectorWindow)
{
    PipelineConfig cfg;
    cfg.detector_window = 0;
    EXPECT_TRUE(mentions(config_violations(cfg), "detector_window must be >= 1"));
    EXPECT_THROW(validate_config(cfg), ValidationError);
}

TEST(ValidateConfig, DetectorLongerThanClassifier)
{
    PipelineConfig cfg;
    cfg.detector_window = 16;
    cfg.classifier_window = 8;
    EXPECT_TRUE(mentions(config_violations(cfg), "n <= m violated"));
}

TEST(ValidateConfig, ReportsEveryViolation)
{
    PipelineConfig cfg;
    cfg.stride = 0;
    cfg.filter_size = 0;
    cfg.deactivate_count = 0;
    cfg.num_classes = 1;
    cfg.gate_threshold = 1.5;
    cfg.tau_late = -0.1;
    cfg.mean_duration = 0;
    const auto v = config_violations(cfg);
    EXPECT_EQ(v.size(), 7u);
    try {
        validate_config(cfg);
        FAIL();
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        for (const char* field : {"stride", "filter_size", "deactivate_count", "num_classes", "gate_threshold",
                                  "tau_late", "mean_duration"}) {
            EXPECT_NE(msg.find(field), std::string::npos) << field;
        }
    }
}

TEST(ParseEnums, RoundTripAndReject)
{
    for (auto k : {FilterKind::Mean, FilterKind::Median, FilterKind::Ewa}) {
        EXPECT_EQ(parse_filter_kind(to_string(k)), k);
    }
    EXPECT_EQ(parse_alignment("oldest"), Alignment::Oldest);
    EXPECT_THROW(parse_filter_kind("gaussian"), ValidationError);
    EXPECT_THROW(parse_alignment("middle"), ValidationError);
}

TEST(Normalize, Examples)
{
    EXPECT_TRUE(normalize(vec({2, 2})).isApprox(vec({0.5, 0.5})));
    EXPECT_EQ(normalize(vec({1, 0, 0})), vec({1, 0, 0}));
    const Vector v = normalize(vec({1, 3}));
    EXPECT_DOUBLE_EQ(v(0), 0.25);
    EXPECT_DOUBLE_EQ(v(1), 0.75);
}

TEST(Normalize, RejectsBadInput)
{
    EXPECT_THROW(normalize(vec({0, 0})), ValidationError);
    EXPECT_THROW(normalize(vec({1, -0.5})), ValidationError);
    EXPECT_THROW(normalize(Vector()), ValidationError);
}

TEST(Normalize, IdempotentAndScaleInvariant)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> scale(1e-3, 1e3);
    for (int trial = 0; trial < 1000; ++trial) {
        Vector x(2 + trial % 20);
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = u(rng);
        const Vector once = normalize(x);
        EXPECT_NEAR(once.sum(), 1.0, 1e-9);
        EXPECT_LE((normalize(once) - once).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LE((normalize(Vector(x * scale(rng))) - once).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Top2, Examples)
{
    auto r = top2(vec({0.1, 0.7, 0.2}));
    EXPECT_EQ(r.argmax, 1);
    EXPECT_DOUBLE_EQ(r.max1, 0.7);
    EXPECT_DOUBLE_EQ(r.max2, 0.2);

    r = top2(vec({0.5, 0.5}));
    EXPECT_EQ(r.argmax, 0);
    EXPECT_DOUBLE_EQ(r.max1, 0.5);
    EXPECT_DOUBLE_EQ(r.max2, 0.5);

    r = top2(vec({0.25, 0.25, 0.3, 0.2}));
    EXPECT_EQ(r.argmax, 2);
    EXPECT_DOUBLE_EQ(r.max1, 0.3);
    EXPECT_DOUBLE_EQ(r.max2, 0.25);
}

TEST(Top2, RejectsShortVectors)
{
    EXPECT_THROW(top2(vec({1.0})), ValidationError);
}

TEST(Top2, AgreesWithFullSort)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coarse(0, 5);  // small range forces ties
    for (int trial = 0; trial < 1000; ++trial) {
        Vector x(2 + trial % 12);
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = coarse(rng) / 5.0;
        std::vector<double> sorted(x.data(), x.data() + x.size());
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        const auto r = top2(x);
        EXPECT_EQ(r.max1, sorted[0]);
        EXPECT_EQ(r.max2, sorted[1]);
        const auto first = std::find(x.data(), x.data() + x.size(), sorted[0]) - x.data();
        EXPECT_EQ(r.argmax, first);
    }
}

TEST(ProbVector, IngestToleranceRules)
{
    const auto exact = ProbVector::ingest(vec({0.1, 0.9}));
    EXPECT_EQ(exact.values(), vec({0.1, 0.9}));

    const auto slack = ProbVector::ingest(vec({0.1, 0.8995}));
    EXPECT_NEAR(slack.values().sum(), 1.0, 1e-12);
    EXPECT_NEAR(slack[0], 0.1 / 0.9995, 1e-15);

    EXPECT_THROW(ProbVector::ingest(vec({0.1, 0.8})), ValidationError);
    EXPECT_THROW(ProbVector::ingest(vec({1.2, -0.2})), ValidationError);
    EXPECT_THROW(ProbVector::ingest(vec({std::nan(""), 1.0})), ValidationError);
}
