#include "mlosim/error.hpp"
#include "mlosim/policy.hpp"
#include "mlosim/rng.hpp"

#include <doctest.h>

using namespace mlosim;
using doctest::Approx;

namespace {

PolicyInput input(PerBand<double> rho, BandSet enabled = BandSet::all())
{
    PolicyInput in;
    in.rho = rho;
    in.enabled = enabled;
    return in;
}

BandSet random_set(Rng& rng)
{
    BandSet s;
    while (s.empty())
        for (const Band b : kAllBands)
            if (rng.bernoulli(0.6)) s.insert(b);
    return s;
}

void check_weights(const Weights& w, const PerBand<double>& expect)
{
    for (std::size_t i = 0; i < 3; ++i) CHECK(w[i] == Approx(expect[i]).epsilon(1e-14));
}

}  // namespace

TEST_CASE("SLCI examples")
{
    check_weights(slci(input({0.5, 0.3, 0.2})), {1, 0, 0});
    check_weights(slci(input({0.4, 0.4, 0.1})), {1, 0, 0});
    check_weights(slci(input({0.1, 0.4, 0.4})), {0, 1, 0});
    check_weights(slci(input({0.9, 0.1, 0.1}, {Band::Band5})), {0, 1, 0});
    check_weights(slci(input({0, 0, 0})), {1, 0, 0});
}

TEST_CASE("MCAA examples")
{
    check_weights(mcaa(input({0.5, 0.3, 0.2})), {0.5, 0.3, 0.2});
    check_weights(mcaa(input({0.6, 0.6, 0.0})), {0.5, 0.5, 0});
    check_weights(mcaa(input({0, 0, 0})), {1.0 / 3, 1.0 / 3, 1.0 / 3});
    check_weights(mcaa(input({0, 0, 0}, {Band::Band5, Band::Band6})), {0, 0.5, 0.5});
    check_weights(mcaa(input({0.8, 0.1, 0.1}, {Band::Band5, Band::Band6})), {0, 0.5, 0.5});
    // Rounding residue on a saturated band is not free airtime.
    check_weights(mcaa(input({0, 1.1e-16, 1.1e-16})), {1.0 / 3, 1.0 / 3, 1.0 / 3});
    check_weights(mcaa(input({0.2, 1e-13, 0})), {1, 0, 0});
}

TEST_CASE("legacy assignment")
{
    check_weights(legacy_assign(input({0, 0, 0}), Band::Band24), {1, 0, 0});
    check_weights(legacy_assign(input({0, 0, 0}), Band::Band6), {0, 0, 1});
    CHECK_THROWS_AS(legacy_assign(input({1, 1, 1}, {Band::Band24, Band::Band5}), Band::Band6), InvalidScenarioError);
}

TEST_CASE("policy properties over random inputs")
{
    Rng rng(5);
    for (int trial = 0; trial < 20000; ++trial) {
        const BandSet en = random_set(rng);
        PerBand<double> rho{};
        for (auto& r : rho) r = rng.bernoulli(0.15) ? 0.0 : (rng.bernoulli(0.1) ? 0.5 : rng.uniform01());
        const auto in = input(rho, en);

        const Weights s = slci(in);
        const Weights m = mcaa(in);
        CHECK(is_valid_weights(s, en));
        CHECK(is_valid_weights(m, en, 1e-12));

        // SLCI picks an enabled argmax, the lowest band among ties.
        double best = -1.0;
        for (const Band b : kAllBands)
            if (en.contains(b)) best = std::max(best, rho[index(b)]);
        std::size_t chosen = 3;
        for (std::size_t i = 0; i < 3; ++i)
            if (s[i] == 1.0) chosen = i;
        REQUIRE(chosen < 3);
        CHECK(rho[chosen] == best);
        for (std::size_t i = 0; i < chosen; ++i)
            if (en.contains(static_cast<Band>(i))) CHECK(rho[i] < best);

        // MCAA is invariant to a common rescaling of rho.
        const double c = rng.uniform(0.01, 1.0);
        const Weights mc = mcaa(input({rho[0] * c, rho[1] * c, rho[2] * c}, en));
        for (std::size_t i = 0; i < 3; ++i) CHECK(mc[i] == Approx(m[i]).epsilon(1e-12));

        // No traffic to a saturated interface unless all are saturated.
        double total = 0.0;
        for (const Band b : kAllBands)
            if (en.contains(b)) total += rho[index(b)];
        if (total > 0.0)
            for (std::size_t i = 0; i < 3; ++i)
                if (rho[i] == 0.0) CHECK(m[i] == 0.0);
    }
}

TEST_CASE("MCAB ordering")
{
    const std::vector<McabFlow> flows{{7, BandSet::all(), 1.0, 10, {}}, {3, {Band::Band5}, 2.0, 10, {}}};
    const auto order = mcab_order(flows);
    REQUIRE(order.size() == 2);
    CHECK(order[0].id == 3);
    CHECK(order[1].id == 7);

    const std::vector<McabFlow> same{{9, BandSet::all(), 2.0, 10, {}}, {4, BandSet::all(), 1.0, 10, {}},
                                     {2, BandSet::all(), 2.0, 10, {}}};
    const auto o2 = mcab_order(same);
    CHECK(o2[0].id == 4);
    CHECK(o2[1].id == 2);
    CHECK(o2[2].id == 9);
}

TEST_CASE("MCAB with one flow reduces to MCAA")
{
    Rng rng(8);
    for (int trial = 0; trial < 5000; ++trial) {
        const BandSet en = random_set(rng);
        PerBand<double> rho{};
        for (auto& r : rho) r = rng.uniform01();
        const std::vector<McabFlow> one{{1, en, 0.0, rng.uniform(1, 500), {rng.uniform01(), rng.uniform01(), rng.uniform01()}}};
        const auto w = mcab_reallocate(one, [&](Band b) { return rho[index(b)]; });
        const auto m = mcaa(input(rho, en));
        for (std::size_t i = 0; i < 3; ++i) CHECK(w.at(1)[i] == Approx(m[i]).epsilon(1e-15));
    }
}

TEST_CASE("MCAB two flows: step-by-step re-execution")
{
    // Flow 5 arrives first and is placed first; its demand eats room before flow 6 is placed.
    const PerBand<double> spm{0.01, 0.005, 0.004};
    const std::vector<McabFlow> flows{{6, BandSet::all(), 2.0, 50, spm}, {5, BandSet::all(), 1.0, 100, spm}};
    const PerBand<double> rho{0.6, 0.5, 0.9};
    const auto w = mcab_reallocate(flows, [&](Band b) { return rho[index(b)]; });

    const double s1 = 0.6 + 0.5 + 0.9;
    const PerBand<double> w5{0.6 / s1, 0.5 / s1, 0.9 / s1};
    PerBand<double> room = rho;
    for (std::size_t i = 0; i < 3; ++i) room[i] -= std::min(room[i], 100 * w5[i] * spm[i]);
    const double s2 = room[0] + room[1] + room[2];
    check_weights(w.at(5), w5);
    check_weights(w.at(6), {room[0] / s2, room[1] / s2, room[2] / s2});
    // The first flow's demand on 2.4 GHz (0.3) halves the room there.
    CHECK(room[0] == Approx(0.3).epsilon(1e-12));
}

TEST_CASE("MCAB with room exhausted falls back to a uniform split")
{
    const PerBand<double> spm{0.1, 0.1, 0.1};
    const std::vector<McabFlow> flows{{1, BandSet::all(), 0.0, 100, spm}, {2, {Band::Band5, Band::Band6}, 1.0, 10, spm}};
    const auto w = mcab_reallocate(flows, [](Band) { return 0.2; });
    // Flow 2 (two bands) goes first and consumes 2.4 nothing, 5/6 GHz fully.
    check_weights(w.at(2), {0, 0.5, 0.5});
    check_weights(w.at(1), {1, 0, 0});
    CHECK(mcab_reallocate({}, [](Band) { return 1.0; }).empty());
}
