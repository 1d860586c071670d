#include <doctest.h>

#include <cmath>
#include <set>

#include "rate_table.hpp"
#include "vlcphy/error.hpp"
#include "vlcphy/modes.hpp"

using namespace vlc;

TEST_CASE("registry holds 9 PHY-I and 14 PHY-II modes in table order") {
    CHECK(list_modes().size() == 23);
    CHECK(list_modes(PhyType::PhyI).size() == 9);
    CHECK(list_modes(PhyType::PhyII).size() == 14);

    const auto& first = list_modes().front();
    CHECK(first.phy == PhyType::PhyI);
    CHECK(first.modulation == Modulation::Ook);
    CHECK(first.rll == RllCode::Manchester);
    CHECK(first.optical_clock_hz == 200000);
    REQUIRE(first.rs);
    CHECK(*first.rs == RsParams{15, 7});
    CHECK(first.cc == CcRate::OneQuarter);

    const auto& last = list_modes().back();
    CHECK(last.phy == PhyType::PhyII);
    CHECK(last.modulation == Modulation::Ook);
    CHECK(last.rll == RllCode::EightBTenB);
    CHECK(last.optical_clock_hz == 120000000);
    CHECK_FALSE(last.rs);
    CHECK_FALSE(last.cc);
}

TEST_CASE("data rates match the printed table") {
    const auto modes = list_modes();
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double rate = data_rate(modes[i]).to_double();
        CAPTURE(i);
        CHECK(std::abs(rate - kPrintedRates[i]) / kPrintedRates[i] < kRateTolerance);
    }
}

TEST_CASE("named data-rate examples") {
    CHECK(data_rate(lookup_mode(PhyType::PhyI, 0)) == Rational(35000, 3));
    CHECK(format_rate(data_rate(lookup_mode(PhyType::PhyI, 0))) == "11.67 kb/s");
    CHECK(format_rate(data_rate(lookup_mode(PhyType::PhyI, 5))) == "35.56 kb/s");
    CHECK(data_rate(lookup_mode(PhyType::PhyII, 5)) == Rational(6000000));
    CHECK(data_rate(lookup_mode(PhyType::PhyII, 13)) == Rational(96000000));
    CHECK(format_rate(data_rate(lookup_mode(PhyType::PhyII, 13))) == "96 Mb/s");
}

TEST_CASE("rate is the product of clock, line-code, RS and CC rates") {
    for (const auto& m : list_modes()) {
        Rational expect(static_cast<std::int64_t>(m.optical_clock_hz));
        expect = expect * rll_rate(m.rll);
        if (m.rs) expect = expect * Rational(m.rs->k, m.rs->n);
        if (m.cc) expect = expect * cc_rate_value(*m.cc);
        CHECK(data_rate(m) == expect);
    }
}

TEST_CASE("lookup_mode") {
    const auto& m8 = lookup_mode(PhyType::PhyI, 8);
    CHECK(m8.modulation == Modulation::Vppm);
    CHECK(m8.rll == RllCode::FourBSixB);
    CHECK_FALSE(m8.rs);
    CHECK(format_rate(data_rate(m8)) == "266.7 kb/s");
    CHECK_THROWS_AS(lookup_mode(PhyType::PhyI, 99), Error);
    try {
        lookup_mode(PhyType::PhyI, 99);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotFound);
    }
    CHECK_THROWS_AS(lookup_mode(PhyType::PhyII, 14), Error);
    CHECK_THROWS_AS(lookup_mode(PhyType::PhyI, -1), Error);
}

TEST_CASE("registry invariants") {
    std::set<std::pair<int, int>> keys;
    for (const auto& m : list_modes()) {
        CHECK(keys.insert({static_cast<int>(m.phy), m.index}).second);
        CHECK(lookup_mode(m.phy, m.index) == m);
        if (m.phy == PhyType::PhyI) {
            CHECK(m.optical_clock_hz <= 400000);
            CHECK((m.rll == RllCode::Manchester) == (m.modulation == Modulation::Ook));
            CHECK((m.rll == RllCode::FourBSixB) == (m.modulation == Modulation::Vppm));
        } else {
            CHECK(m.optical_clock_hz <= 120000000);
            CHECK((m.rll == RllCode::EightBTenB) == (m.modulation == Modulation::Ook));
            CHECK((m.rll == RllCode::FourBSixB) == (m.modulation == Modulation::Vppm));
            CHECK_FALSE(m.cc);
        }
        if (m.cc) CHECK(m.rs.has_value());
        if (m.rs) {
            CHECK(m.rs->k >= 1);
            CHECK(m.rs->k < m.rs->n);
        }
    }
}

TEST_CASE("rate is monotone in the optical clock") {
    for (const auto& a : list_modes())
        for (const auto& b : list_modes()) {
            if (a.modulation == b.modulation && a.rll == b.rll && a.rs == b.rs && a.cc == b.cc &&
                a.optical_clock_hz < b.optical_clock_hz)
                CHECK(data_rate(a) < data_rate(b));
        }
}

TEST_CASE("modulation follows the optical clock") {
    CHECK(modulation_for_clock(PhyType::PhyI, 200000) == Modulation::Ook);
    CHECK(modulation_for_clock(PhyType::PhyI, 400000) == Modulation::Vppm);
    CHECK(modulation_for_clock(PhyType::PhyII, 7500000) == Modulation::Vppm);
    CHECK(modulation_for_clock(PhyType::PhyII, 30000000) == Modulation::Ook);
    CHECK_THROWS_AS(modulation_for_clock(PhyType::PhyI, 1000), Error);
}
