#include <map>

#include <catch2/catch_amalgamated.hpp>

#include "mpue_sim/measurement.hpp"
#include "mpue_sim/rng.hpp"

using namespace mpue_sim;

TEST_CASE("L1 filter on constants and pairs") {
    const std::vector<double> constant{-80.0, -80.0, -80.0};
    CHECK(l1_filter(constant, 3) == -80.0);
    const std::vector<double> pair{-80.0, -90.0};
    CHECK(l1_filter(pair, 2) == -85.0);
}

TEST_CASE("L1 filter equals the brute-force windowed mean") {
    Rng rng(1, RngStream::kDrop);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> history;
        for (int i = 0; i < 10; ++i) history.push_back(rng.uniform(-120.0, -60.0));
        const int n_l1 = 1 + static_cast<int>(rng.uniform_int(10));
        double sum = 0.0;
        const int take = std::min<int>(n_l1, static_cast<int>(history.size()));
        for (int i = 0; i < take; ++i) sum += history[history.size() - 1 - i];
        CHECK_THAT(l1_filter(history, n_l1),
                   Catch::Matchers::WithinAbs(sum / take, 1e-12));
    }
}

TEST_CASE("L1 filter warm-up averages what exists") {
    const std::vector<double> one{-75.0};
    CHECK(l1_filter(one, 4) == -75.0);
    const std::vector<double> two{-70.0, -90.0};
    CHECK(l1_filter(two, 4) == -80.0);
}

TEST_CASE("L1 ring mirrors the moving window") {
    L1Ring ring(2);
    ring.push(-80.0);
    CHECK(ring.mean() == -80.0);
    ring.push(-90.0);
    CHECK(ring.mean() == -85.0);
    ring.push(-70.0);
    CHECK(ring.mean() == -80.0);  // window is now {-90, -70}
    ring.clear();
    CHECK(ring.empty());
}

TEST_CASE("strongest beam set definition") {
    const std::vector<double> below{-120.0, -119.0, -110.0};
    CHECK(strongest_beam_set(below, -105.0).empty());

    const std::vector<double> all{-120.0, -80.0, -60.0};
    CHECK(strongest_beam_set(all, -std::numeric_limits<double>::infinity()).size() == 3);

    Rng rng(2, RngStream::kDrop);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> beams;
        for (int b = 0; b < 12; ++b) beams.push_back(rng.uniform(-130.0, -70.0));
        const auto got = strongest_beam_set(beams, -105.0);
        std::vector<int> want;
        for (int b = 0; b < 12; ++b)
            if (beams[static_cast<std::size_t>(b)] > -105.0) want.push_back(b);
        CHECK(got == want);
    }
}

TEST_CASE("cell quality averages the strongest subset") {
    const std::vector<double> single{-70.0};
    const std::vector<int> idx{0};
    CHECK(cell_quality_l1(idx, single, 2) == -70.0);

    const std::vector<double> three{-70.0, -72.0, -90.0};
    const std::vector<int> all{0, 1, 2};
    CHECK(cell_quality_l1(all, three, 2) == -71.0);

    // Empty strongest set: highest single beam is the cell quality.
    const std::vector<double> weak{-101.0, -99.0};
    CHECK(cell_quality_l1(std::vector<int>{}, weak, 2) == -99.0);

    // Fewer members than n_str: average the whole set.
    const std::vector<int> two{0, 2};
    CHECK(cell_quality_l1(two, three, 5) == -80.0);
}

TEST_CASE("cell quality stays within the averaged subset's bounds") {
    Rng rng(3, RngStream::kDrop);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> beams;
        for (int b = 0; b < 12; ++b) beams.push_back(rng.uniform(-130.0, -60.0));
        const auto set = strongest_beam_set(beams, -105.0);
        const double q = cell_quality_l1(set, beams, 2);
        const double strongest = *std::max_element(beams.begin(), beams.end());
        CHECK(q <= strongest + 1e-12);
        if (!set.empty()) {
            double weakest_member = 0.0;
            std::vector<double> members;
            for (int b : set) members.push_back(beams[static_cast<std::size_t>(b)]);
            std::sort(members.begin(), members.end(), std::greater<>());
            weakest_member = members[std::min<std::size_t>(members.size(), 2) - 1];
            CHECK(q >= weakest_member - 1e-12);
        }
    }
}

TEST_CASE("L3 IIR coefficient behavior") {
    CHECK(l3_forgetting_factor(0.0) == 1.0);
    CHECK_THAT(l3_forgetting_factor(4.0), Catch::Matchers::WithinAbs(0.5, 1e-12));

    CHECK(l3_iir(std::nullopt, -77.0, 4.0) == -77.0);  // seeds with first L1
    CHECK(l3_iir(-80.0, -80.0, 7.0) == -80.0);
    CHECK_THAT(l3_iir(-90.0, -80.0, 4.0), Catch::Matchers::WithinAbs(-85.0, 1e-12));
    CHECK(l3_iir(-90.0, -80.0, 0.0) == -80.0);  // k = 0 is a passthrough
}

TEST_CASE("L3 sequence matches the unrolled recurrence oracle") {
    Rng rng(4, RngStream::kDrop);
    const double k = 4.0;
    const double alpha = l3_forgetting_factor(k);
    std::vector<double> inputs;
    for (int i = 0; i < 50; ++i) inputs.push_back(rng.uniform(-120.0, -60.0));

    std::optional<double> l3;
    for (double x : inputs) l3 = l3_iir(l3, x, k);

    // Unrolled: alpha * sum (1-alpha)^i x_{n-i} + (1-alpha)^(n-1) x_0 seed.
    double oracle = inputs[0];
    for (std::size_t i = 1; i < inputs.size(); ++i)
        oracle = alpha * inputs[i] + (1.0 - alpha) * oracle;
    double expanded = (1.0 - alpha);
    double acc = alpha * inputs.back();
    for (std::size_t i = inputs.size() - 1; i-- > 1;) {
        acc += alpha * expanded * inputs[i];
        expanded *= (1.0 - alpha);
    }
    acc += expanded * inputs[0];
    CHECK_THAT(*l3, Catch::Matchers::WithinAbs(oracle, 1e-9));
    CHECK_THAT(*l3, Catch::Matchers::WithinAbs(acc, 1e-9));
}

TEST_CASE("L3 converges geometrically to a constant input") {
    const double alpha = l3_forgetting_factor(4.0);
    const double x = -70.0;
    double l3 = -100.0;
    double gap = std::abs(l3 - x);
    for (int i = 0; i < 20; ++i) {
        l3 = l3_iir(l3, x, 4.0);
        const double new_gap = std::abs(l3 - x);
        CHECK_THAT(new_gap, Catch::Matchers::WithinAbs(gap * (1.0 - alpha), 1e-12));
        gap = new_gap;
    }
}

TEST_CASE("filters are monotone in their inputs") {
    Rng rng(5, RngStream::kDrop);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> history;
        for (int i = 0; i < 6; ++i) history.push_back(rng.uniform(-120.0, -60.0));
        std::vector<double> raised = history;
        for (auto& v : raised) v += rng.uniform(0.0, 5.0);
        CHECK(l1_filter(raised, 4) >= l1_filter(history, 4));

        const double prev = rng.uniform(-120.0, -60.0);
        const double l1 = rng.uniform(-120.0, -60.0);
        CHECK(l3_iir(prev + 1.0, l1 + 1.0, 4.0) >= l3_iir(prev, l1, 4.0));
    }
}

namespace {

struct Entry {
    int b, d, r;
    double v;
};

}  // namespace

TEST_CASE("serving panel selection is an exhaustive argmax with index ties") {
    const std::array<int, 7> refined{1, 2, 3, 4, 5, 6, 7};

    SECTION("single dominant entry") {
        auto table = [](int d, int r) { return d == 2 && r == 5 ? -60.0 : -90.0; };
        const auto sel = select_serving_panel_rx(table, 3, refined);
        CHECK(sel.panel == 2);
        CHECK(sel.rx_beam == 5);
    }
    SECTION("exact tie breaks to the lowest panel id") {
        auto table = [](int d, int r) { return (r == 3 && (d == 1 || d == 3)) ? -60.0 : -90.0; };
        const auto sel = select_serving_panel_rx(table, 3, refined);
        CHECK(sel.panel == 1);
        CHECK(sel.rx_beam == 3);
    }
    SECTION("random tables match a brute-force scan") {
        Rng rng(6, RngStream::kDrop);
        for (int trial = 0; trial < 100; ++trial) {
            std::map<std::pair<int, int>, double> values;
            for (int d = 1; d <= 3; ++d)
                for (int r : refined) values[{d, r}] = rng.uniform(-120.0, -60.0);
            auto table = [&](int d, int r) { return values[{d, r}]; };
            const auto sel = select_serving_panel_rx(table, 3, refined);
            double best = -1e30;
            for (const auto& [key, v] : values) best = std::max(best, v);
            CHECK(values[{sel.panel, sel.rx_beam}] == best);
        }
    }
    SECTION("argmax is invariant under constant offsets") {
        Rng rng(7, RngStream::kDrop);
        std::map<std::pair<int, int>, double> values;
        for (int d = 1; d <= 3; ++d)
            for (int r : refined) values[{d, r}] = rng.uniform(-120.0, -60.0);
        const auto a = select_serving_panel_rx(
            [&](int d, int r) { return values[{d, r}]; }, 3, refined);
        const auto b = select_serving_panel_rx(
            [&](int d, int r) { return values[{d, r}] + 17.5; }, 3, refined);
        CHECK(a.panel == b.panel);
        CHECK(a.rx_beam == b.rx_beam);
    }
}

TEST_CASE("best panel selection scans beams, panels, and rx beams jointly") {
    const std::array<int, 7> refined{1, 2, 3, 4, 5, 6, 7};
    const std::array<int, 1> wide{kWideRxBeam};

    SECTION("all mass on one triple") {
        auto table = [](int b, int d, int r) {
            return (b == 7 && d == 3 && r == 2) ? -50.0 : -100.0;
        };
        const auto sel = select_best_panel_rx(table, 12, 3, refined);
        CHECK(sel.beam == 7);
        CHECK(sel.rx.panel == 3);
        CHECK(sel.rx.rx_beam == 2);
    }
    SECTION("wide mode reduces the scan to (beam, panel)") {
        auto table = [](int b, int d, int r) {
            CHECK(r == kWideRxBeam);
            return -100.0 + b + d;
        };
        const auto sel = select_best_panel_rx(table, 12, 3, wide);
        CHECK(sel.beam == 12);
        CHECK(sel.rx.panel == 3);
        CHECK(sel.rx.rx_beam == kWideRxBeam);
    }
    SECTION("random tables match brute force") {
        Rng rng(8, RngStream::kDrop);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Entry> entries;
            for (int b = 1; b <= 12; ++b)
                for (int d = 1; d <= 3; ++d)
                    for (int r : refined)
                        entries.push_back({b, d, r, rng.uniform(-120.0, -60.0)});
            auto table = [&](int b, int d, int r) {
                for (const auto& e : entries)
                    if (e.b == b && e.d == d && e.r == r) return e.v;
                return -1e30;
            };
            const auto sel = select_best_panel_rx(table, 12, 3, refined);
            double best = -1e30;
            for (const auto& e : entries) best = std::max(best, e.v);
            CHECK(table(sel.beam, sel.rx.panel, sel.rx.rx_beam) == best);
        }
    }
}
