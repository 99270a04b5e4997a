#include <gtest/gtest.h>

#include <numeric>

#include "generators.hpp"
#include "nabla/errors.hpp"
#include "nabla/operad.hpp"

using namespace nabla;
using nabla::testing::Gen;
using nabla::testing::R;

namespace {

using Config = DiscConfiguration<Rational>;

Disc<Rational> disc(const char* re, const char* im, const char* r, const char* tau = "0")
{
    return Disc<Rational>{{R(re), R(im)}, R(r), R(tau)};
}

Config config(std::vector<Disc<Rational>> discs)
{
    Config c;
    c.discs = std::move(discs);
    return c;
}

std::vector<std::vector<int>> all_degree_vectors(std::size_t length)
{
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << length); ++mask) {
        std::vector<int> v(length);
        for (std::size_t k = 0; k < length; ++k) v[k] = (mask >> k) & 1u;
        out.push_back(v);
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Validation

TEST(DiscValidate, IdentityConfiguration)
{
    EXPECT_TRUE(validate(Config::identity()).valid);
    EXPECT_TRUE(Config::identity().is_identity());
    EXPECT_TRUE(validate(to_float(Config::identity())).valid);
}

TEST(DiscValidate, OverlapIsRejected)
{
    // Centers +-0.3 with radius 0.35: distance 0.6 < 0.7.
    const Config c = config({disc("3/10", "0", "7/20"), disc("-3/10", "0", "7/20")});
    const DiscValidation v = validate(c);
    EXPECT_FALSE(v.valid);
    ASSERT_EQ(v.diagnostics.size(), 1u);
    EXPECT_EQ(v.diagnostics[0], "discs 0 and 1 overlap");
    EXPECT_FALSE(validate(to_float(c)).valid);
}

TEST(DiscValidate, SeparatedPairIsAccepted)
{
    // Centers +-0.5 with radius 0.3 leave a gap of 0.4.
    const Config c = config({disc("1/2", "0", "3/10"), disc("-1/2", "0", "3/10")});
    EXPECT_TRUE(validate(c).valid);
}

TEST(DiscValidate, SingleDisc)
{
    EXPECT_TRUE(validate(config({disc("1/2", "0", "1/4")})).valid);
    // Touching the unit circle is not allowed for the closed disc.
    EXPECT_FALSE(validate(config({disc("1/2", "0", "1/2")})).valid);
    EXPECT_FALSE(validate(config({disc("0", "0", "0")})).valid);
    EXPECT_FALSE(validate(config({disc("0", "0", "1/2", "3/2")})).valid);
}

TEST(DiscValidate, TouchingDiscsOverlap)
{
    const Config c = config({disc("1/4", "0", "1/4"), disc("-1/4", "0", "1/4")});
    EXPECT_FALSE(validate(c).valid);
}

TEST(DiscValidate, ZPoint)
{
    Config c = config({disc("1/2", "0", "1/4")});
    c.z_point = Complex<Rational>{R("-1/2"), R("0")};
    EXPECT_TRUE(validate(c).valid);
    c.z_point = Complex<Rational>{R("1/2"), R("1/8")};
    EXPECT_FALSE(validate(c).valid);
    c.z_point = Complex<Rational>{R("3/4"), R("0")}; // on the boundary circle
    EXPECT_TRUE(validate(c).valid);
    c.z_point = Complex<Rational>{R("1"), R("1/10")};
    EXPECT_FALSE(validate(c).valid);
}

TEST(DiscValidate, RFamilyMember)
{
    Config r = Config::identity();
    r.z_point = Complex<Rational>{R("0"), R("-1")};
    EXPECT_TRUE(validate(r).valid);
    r.z_point = Complex<Rational>{R("0"), R("1/2")};
    EXPECT_FALSE(validate(r).valid);
    Config framed = Config::identity();
    framed.discs[0].framing = R("1/4");
    EXPECT_FALSE(validate(framed).valid);
}

// ---------------------------------------------------------------------------
// Gluing

TEST(Glue, IdentityOnTheRight)
{
    Gen g(3);
    for (int i = 0; i < 30; ++i) {
        const Config c = nabla::testing::random_configuration(g);
        for (std::size_t k = 0; k < c.size(); ++k) EXPECT_TRUE(same_configuration(glue(c, k, Config::identity()), c));
    }
}

TEST(Glue, IdentityOnTheLeft)
{
    Gen g(4);
    for (int i = 0; i < 30; ++i) {
        const Config c = nabla::testing::random_configuration(g);
        EXPECT_TRUE(same_configuration(glue(Config::identity(), 0, c), c));
    }
}

TEST(Glue, ScalesIntoHost)
{
    const Config out = glue(config({disc("1/2", "0", "1/4")}), 0, config({disc("0", "0", "1/2")}));
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out.discs[0].center, (Complex<Rational>{R("1/2"), R("0")}));
    EXPECT_EQ(out.discs[0].radius, R("1/8"));
}

TEST(Glue, QuarterTurnFraming)
{
    const Config out = glue(config({disc("1/2", "0", "1/4", "1/4")}), 0, config({disc("1/5", "0", "1/10")}));
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out.discs[0].center, (Complex<Rational>{R("1/2"), R("1/20")}));
    EXPECT_EQ(out.discs[0].radius, R("1/40"));
    EXPECT_EQ(out.discs[0].framing, R("1/4"));
}

TEST(Glue, IndexOrderAndFramingSum)
{
    const Config c1 = config({disc("-1/2", "0", "1/4", "3/4"), disc("1/2", "0", "1/4", "1/2")});
    const Config c2 = config({disc("-1/2", "0", "1/4", "1/2"), disc("1/2", "0", "1/4")});
    const Config out = glue(c1, 0, c2);
    ASSERT_EQ(out.size(), 3u);
    // Rotation by 3/4 sends -1/2 to i/2.
    EXPECT_EQ(out.discs[0].center, (Complex<Rational>{R("-1/2"), R("1/8")}));
    EXPECT_EQ(out.discs[0].framing, R("1/4"));
    EXPECT_EQ(out.discs[1].center, (Complex<Rational>{R("-1/2"), R("-1/8")}));
    EXPECT_EQ(out.discs[1].framing, R("3/4"));
    EXPECT_EQ(out.discs[2].center, c1.discs[1].center);
}

TEST(Glue, Errors)
{
    Config a = config({disc("1/2", "0", "1/4")});
    Config b = config({disc("0", "0", "1/2")});
    EXPECT_THROW(glue(a, 1, b), IndexOutOfRange);
    Config bad = config({disc("0", "0", "2")});
    EXPECT_THROW(glue(a, 0, bad), InvalidInput);
    EXPECT_THROW(glue(bad, 0, a), InvalidInput);
    a.z_point = Complex<Rational>{R("-1/2"), R("0")};
    b.z_point = Complex<Rational>{R("0"), R("3/4")};
    EXPECT_THROW(glue(a, 0, b), ZConflict);
}

TEST(Glue, ZPointFollowsInsertedConfiguration)
{
    Config host = config({disc("1/2", "0", "1/4", "1/2")});
    Config r = Config::identity();
    r.z_point = Complex<Rational>{R("1"), R("0")};
    const Config out = glue(host, 0, r);
    ASSERT_TRUE(out.z_point.has_value());
    // Rotated by a half turn onto the host's circle.
    EXPECT_EQ(*out.z_point, (Complex<Rational>{R("1/4"), R("0")}));
    EXPECT_TRUE(validate(out).valid);
}

TEST(Glue, NonQuarterFramingNeedsFloatMode)
{
    const Config host = config({disc("1/2", "0", "1/4", "1/8")});
    const Config c2 = config({disc("1/2", "0", "1/4")});
    EXPECT_THROW(glue(host, 0, c2), InvalidInput);
    const DiscConfiguration<double> out = glue(to_float(host), 0, to_float(c2));
    EXPECT_NEAR(out.discs[0].center.re, 0.5 + 0.125 * std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(out.discs[0].center.im, 0.125 * std::sqrt(0.5), 1e-12);
}

TEST(Glue, AssociativityRational)
{
    Gen g(11);
    for (int n = 0; n < 100; ++n) {
        const Config a = nabla::testing::random_configuration(g);
        const Config b = nabla::testing::random_configuration(g);
        const Config c = nabla::testing::random_configuration(g);
        const auto i = static_cast<std::size_t>(g.integer(0, static_cast<int>(a.size()) - 1));
        const auto j = static_cast<std::size_t>(g.integer(0, static_cast<int>(b.size()) - 1));
        const Config left = glue(glue(a, i, b), i + j, c);
        const Config right = glue(a, i, glue(b, j, c));
        EXPECT_TRUE(same_configuration(left, right));
        EXPECT_TRUE(validate(left).valid);
    }
}

TEST(Glue, AssociativityFloat)
{
    Gen g(12);
    for (int n = 0; n < 100; ++n) {
        const auto a = to_float(nabla::testing::random_configuration(g, 3, true));
        const auto b = to_float(nabla::testing::random_configuration(g, 3, true));
        const auto c = to_float(nabla::testing::random_configuration(g, 3, true));
        const auto i = static_cast<std::size_t>(g.integer(0, static_cast<int>(a.size()) - 1));
        const auto j = static_cast<std::size_t>(g.integer(0, static_cast<int>(b.size()) - 1));
        EXPECT_TRUE(same_configuration(glue(glue(a, i, b), i + j, c), glue(a, i, glue(b, j, c))));
    }
}

TEST(Glue, FramingAdditivityAlongChain)
{
    Gen g(13);
    for (int n = 0; n < 20; ++n) {
        Config acc = config({disc("0", "0", "1/2", "0")});
        Rational total(0);
        for (int k = 0; k < 5; ++k) {
            Config step = config({disc("1/8", "0", "1/2", "0")});
            step.discs[0].framing = Rational(g.integer(0, 3), 4);
            step.discs[0].framing.canonicalize();
            total += step.discs[0].framing;
            acc = glue(acc, 0, step);
        }
        EXPECT_EQ(acc.discs[0].framing, reduce_framing(total));
    }
}

TEST(Glue, ValidityPreserved)
{
    Gen g(14);
    for (int n = 0; n < 100; ++n) {
        const Config a = nabla::testing::random_configuration(g);
        const Config b = nabla::testing::random_configuration(g);
        const auto i = static_cast<std::size_t>(g.integer(0, static_cast<int>(a.size()) - 1));
        EXPECT_TRUE(validate(glue(a, i, b)).valid);
    }
}

// ---------------------------------------------------------------------------
// Koszul signs

TEST(KoszulSign, Examples)
{
    const std::vector<int> prefix{1};
    EXPECT_EQ(koszul_sign(1, 0, 1, prefix), 1);
    EXPECT_EQ(koszul_sign(0, 0, 1, prefix), 1);
    EXPECT_EQ(koszul_sign(1, 1, 1, prefix), 1);
    EXPECT_EQ(koszul_sign(0, 1, 1, prefix), -1);
    EXPECT_EQ(koszul_sign(1, 1, 0, prefix), -1);
    EXPECT_THROW(koszul_sign(0, 1, 2, prefix), IndexOutOfRange);
}

TEST(KoszulSign, MatchesMovingPhi2IntoPlace)
{
    // Word (phi2, phi1, x_0, ..., x_{m-1}) with degrees (d2, d1, ...); phi2
    // travels past phi1 and the inputs ahead of position i1.
    for (std::size_t m1 = 1; m1 <= 3; ++m1) {
        for (std::size_t m2 = 1; m2 <= 3; ++m2) {
            const std::size_t m = m1 + m2 - 1;
            for (const auto& degs : all_degree_vectors(m + 2)) {
                std::vector<int> x(degs.begin() + 2, degs.end());
                for (std::size_t i1 = 0; i1 < m1; ++i1) {
                    std::vector<std::size_t> order{1};
                    for (std::size_t k = 0; k < i1; ++k) order.push_back(k + 2);
                    order.push_back(0);
                    for (std::size_t k = i1; k < m; ++k) order.push_back(k + 2);
                    EXPECT_EQ(koszul_sign(degs[1], degs[0], i1, x), nabla::testing::koszul_permutation_sign(degs, order));
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Composition

TEST(Compose, IdentityLaws)
{
    Gen g(21);
    for (const auto& degs : all_degree_vectors(3)) {
        for (int d : {-1, 0, 1}) {
            const GradedOperation phi = nabla::testing::random_operation(g, degs, 2, d);
            const GradedOperation id = GradedOperation::identity(degs);
            EXPECT_EQ(compose(phi, 0, id), phi);
            EXPECT_EQ(compose(phi, 1, id), phi);
            EXPECT_EQ(compose(id, 0, phi), phi);
        }
    }
}

TEST(Compose, ScalarTables)
{
    const std::vector<int> degs{0};
    GradedOperation a(degs, 2, 0), b(degs, 2, 0);
    const std::vector<std::size_t> zero2{0, 0};
    a.set(zero2, {Rational(3)});
    b.set(zero2, {Rational(-5, 2)});
    const GradedOperation c = compose(a, 1, b);
    EXPECT_EQ(c.arity(), 3u);
    const std::vector<std::size_t> zero3{0, 0, 0};
    EXPECT_EQ(c.at(zero3)[0], Rational(-15, 2));
}

TEST(Compose, OddInsertionPicksUpSign)
{
    // V = <e (even), f (odd)>, mu the graded product with f f = 0, delta e = 0,
    // delta f = e of degree -1.
    const std::vector<int> degs{0, 1};
    GradedOperation mu(degs, 2, 0), delta(degs, 1, -1);
    auto set2 = [&](std::size_t i, std::size_t j, std::vector<Rational> v) {
        const std::vector<std::size_t> t{i, j};
        mu.set(t, std::move(v));
    };
    set2(0, 0, {1, 0});
    set2(0, 1, {0, 1});
    set2(1, 0, {0, 1});
    const std::vector<std::size_t> f{1};
    delta.set(f, {1, 0});
    // (mu o_1 delta)(f, f) = (-1)^(|mu| + |f|) mu(f, delta f) = -mu(f, e) = -f.
    const GradedOperation c = compose(mu, 1, delta);
    const std::vector<std::size_t> ff{1, 1};
    EXPECT_EQ(c.at(ff), (std::vector<Rational>{0, -1}));
    // (mu o_0 delta)(f, f) = mu(e, f) = f.
    EXPECT_EQ(compose(mu, 0, delta).at(ff), (std::vector<Rational>{0, 1}));
}

TEST(Compose, Errors)
{
    const GradedOperation a(std::vector<int>{0, 1}, 2, 0);
    const GradedOperation b(std::vector<int>{0, 0}, 2, 0);
    EXPECT_THROW(compose(a, 2, a), IndexOutOfRange);
    EXPECT_THROW(compose(a, 0, b), InvalidInput);
    GradedOperation c(std::vector<int>{0, 1}, 1, 0);
    const std::vector<std::size_t> t{0};
    EXPECT_THROW(c.set(t, {0, 1}), DegreeMismatch);
    EXPECT_THROW(GradedOperation(std::vector<int>{}, 1, 0), InvalidInput);
}

TEST(Compose, SequentialAssociativityExhaustive)
{
    Gen g(31);
    for (std::size_t dim = 1; dim <= 4; ++dim) {
        for (const auto& degs : all_degree_vectors(dim)) {
            for (int dp : {-1, 0, 1}) {
                for (int dq : {-1, 0, 1}) {
                    for (int dr : {-1, 0, 1}) {
                        const auto phi = nabla::testing::random_operation(g, degs, 2, dp);
                        const auto psi = nabla::testing::random_operation(g, degs, 2, dq);
                        const auto chi = nabla::testing::random_operation(g, degs, 1 + dim % 2, dr);
                        for (std::size_t i = 0; i < 2; ++i) {
                            for (std::size_t j = 0; j < 2; ++j) {
                                ASSERT_EQ(compose(compose(phi, i, psi), i + j, chi), compose(phi, i, compose(psi, j, chi)))
                                    << "dim " << dim << " i " << i << " j " << j;
                            }
                        }
                    }
                }
            }
        }
    }
}

TEST(Compose, ParallelInsertionsCommuteUpToSign)
{
    Gen g(32);
    for (std::size_t dim = 1; dim <= 3; ++dim) {
        for (const auto& degs : all_degree_vectors(dim)) {
            for (int dq : {-1, 0, 1}) {
                for (int dr : {-1, 0, 1}) {
                    const auto phi = nabla::testing::random_operation(g, degs, 2, 1);
                    const auto psi = nabla::testing::random_operation(g, degs, 2, dq);
                    const auto chi = nabla::testing::random_operation(g, degs, 1, dr);
                    const GradedOperation a = compose(compose(phi, 1, chi), 0, psi);
                    const GradedOperation b = compose(compose(phi, 0, psi), 2, chi);
                    if ((dq * dr) % 2 == 0) {
                        EXPECT_EQ(a, b);
                    } else {
                        GradedOperation neg = b;
                        for (std::size_t f = 0; f < b.entries(); ++f) {
                            const auto t = b.tuple(f);
                            std::vector<Rational> v = b.at(t);
                            for (auto& c : v) c = -c;
                            neg.set(t, v);
                        }
                        EXPECT_EQ(a, neg);
                    }
                }
            }
        }
    }
}
