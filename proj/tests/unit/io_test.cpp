#include <gtest/gtest.h>

#include "json.hpp"
#include "oracles.hpp"
#include "potapov/catalog.hpp"
#include "potapov/io.hpp"

namespace potapov {
namespace {

PotapovProduct sample_product() {
    std::mt19937_64 rng(14);
    PotapovProduct p;
    p.u = oracle::random_unitary(2, rng);
    p.factors.emplace_back(Complex(-0.3, 2.0), oracle::random_unitary(2, rng).col(0));
    p.factors.emplace_back(Complex(-1.1, -4.5), oracle::random_unitary(2, rng).col(1));
    return p;
}

TEST(Io, NetworkRoundTripIsExact) {
    for (const DelayNetwork& net : {catalog::example1(), catalog::example2(), build_cavity(0.8, 1.0)}) {
        const DelayNetwork back = parse_network(network_to_json(net));
        EXPECT_EQ((back.stacked() - net.stacked()).norm(), 0.0);
        EXPECT_EQ(back.delays(), net.delays());
    }
}

TEST(Io, ProductRoundTrip) {
    const PotapovProduct p = sample_product();
    const PotapovProduct back = parse_product(product_to_json(p));
    ASSERT_EQ(back.factors.size(), p.factors.size());
    const Complex z(0.2, 1.3);
    EXPECT_LT((eval_product(back, z) - eval_product(p, z)).norm(), 1e-15);
}

TEST(Io, StatespaceRoundTripIsExact) {
    const StateSpace ss = product_to_statespace(sample_product());
    const StateSpace back = parse_statespace(statespace_to_json(ss));
    EXPECT_EQ((back.a - ss.a).norm(), 0.0);
    EXPECT_EQ((back.b - ss.b).norm(), 0.0);
    EXPECT_EQ((back.c - ss.c).norm(), 0.0);
    EXPECT_EQ((back.d - ss.d).norm(), 0.0);
}

TEST(Io, StatespaceShapeErrors) {
    nlohmann::json doc = nlohmann::json::parse(statespace_to_json(product_to_statespace(sample_product())));
    doc["modes"] = 3;
    try {
        (void)parse_statespace(doc.dump());
        FAIL() << "expected MalformedInput";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MalformedInput);
    }
}

TEST(Io, RootsDocumentPairsZeros) {
    const RootSet r = find_poles(build_cavity(0.8, 1.0), {-1.0, 0.0, -7.0, 7.0});
    const nlohmann::json doc = nlohmann::json::parse(roots_to_json(r));
    EXPECT_EQ(doc["count"], 3);
    ASSERT_EQ(doc["zeros"].size(), 3u);
    EXPECT_NEAR(doc["zeros"][1][0].get<double>(), -std::log(0.8), 1e-12);
}

TEST(Io, SeparationDocument) {
    const SeparationResult sep = separate(catalog::feedforward_chain(0.25));
    const nlohmann::json doc = nlohmann::json::parse(separation_to_json(sep));
    EXPECT_EQ(doc["stages"].size(), 4u);
    EXPECT_EQ(doc["core"]["n"], 0);
}

TEST(Io, FormatAndCsv) {
    EXPECT_EQ(format_double(0.1), "1.000000000000e-01");
    EXPECT_EQ(format_double(-2.5), "-2.500000000000e+00");
    Signal s;
    s.t = {0.0, 0.5};
    s.values = {CVector::Constant(1, Complex(1.0, -1.0)), CVector::Zero(1)};
    EXPECT_EQ(signal_to_csv(s),
              "t,re_u_0,im_u_0\n"
              "0.000000000000e+00,1.000000000000e+00,-1.000000000000e+00\n"
              "5.000000000000e-01,0.000000000000e+00,0.000000000000e+00\n");
}

TEST(Io, MissingFile) {
    try {
        (void)read_text_file("/nonexistent/file.json");
        FAIL() << "expected MalformedInput";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MalformedInput);
    }
}

}  // namespace
}  // namespace potapov
