#include "fsrv/error.hpp"
#include "fsrv/fib.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using fsrv::FibInt;
using fsrv::SignedFibInt;

TEST(Fib, ListedValues) {
    const int expected[] = {0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
    for (int n = 0; n <= 12; ++n) {
        EXPECT_EQ(fsrv::fib(n), FibInt(expected[n])) << n;
    }
}

TEST(Fib, LargestIndex) {
    // a_186 = 332825110087067562321196029789634457848, the last value below 2^128.
    EXPECT_EQ(fsrv::to_string(fsrv::fib(186)), "332825110087067562321196029789634457848");
    EXPECT_THROW(fsrv::fib(187), fsrv::OverflowError);
    EXPECT_THROW(fsrv::fib(-1), fsrv::DomainError);
}

TEST(Fib, OverflowMessageNamesBound) {
    try {
        fsrv::fib(200);
        FAIL();
    } catch (const fsrv::OverflowError& e) {
        EXPECT_NE(std::string(e.what()).find("186"), std::string::npos);
    }
}

TEST(Fib, Recurrence) {
    for (int n = 2; n <= fsrv::kMaxFibIndex; ++n) {
        ASSERT_EQ(fsrv::fib(n), fsrv::fib(n - 1) + fsrv::fib(n - 2)) << n;
    }
}

TEST(Fib, DocagneExamples) {
    EXPECT_EQ(fsrv::docagne(6, 3), SignedFibInt(-2));
    EXPECT_EQ(fsrv::docagne(5, 5), SignedFibInt(0));
    EXPECT_EQ(fsrv::docagne(7, 4), SignedFibInt(2));
}

TEST(Fib, DocagneIdentity) {
    for (int m = 0; m <= 100; ++m) {
        for (int n = 0; n <= m; ++n) {
            const SignedFibInt lhs = SignedFibInt(fsrv::fib(m)) * SignedFibInt(fsrv::fib(n + 1)) -
                                     SignedFibInt(fsrv::fib(m + 1)) * SignedFibInt(fsrv::fib(n));
            SignedFibInt rhs(fsrv::fib(m - n));
            if (n % 2 == 1) {
                rhs = -rhs;
            }
            ASSERT_EQ(lhs, rhs) << m << "," << n;
            ASSERT_EQ(fsrv::docagne(m, n), rhs);
        }
    }
    EXPECT_NO_THROW(fsrv::docagne(185, 0));
    EXPECT_THROW(fsrv::docagne(3, 4), fsrv::DomainError);
}

TEST(Fib, PrefixSum) {
    EXPECT_EQ(fsrv::prefix_sum(1), FibInt(1));
    EXPECT_EQ(fsrv::prefix_sum(4), FibInt(7));
    EXPECT_EQ(fsrv::prefix_sum(10), FibInt(143));
    FibInt running = 0;
    for (int n = 1; n <= 184; ++n) {
        running += fsrv::fib(n);
        ASSERT_EQ(fsrv::prefix_sum(n), running) << n;
        ASSERT_EQ(running, fsrv::fib(n + 2) - 1);
    }
}

TEST(Fib, SumOfSquares) {
    for (int n = 1; n <= 90; ++n) {
        const FibInt a = fsrv::fib(n - 1);
        const FibInt b = fsrv::fib(n);
        ASSERT_EQ(a * a + b * b, fsrv::fib(2 * n - 1)) << n;
    }
}

TEST(Fib, Ratio) {
    EXPECT_NEAR(fsrv::ratio(21, 1), 17711.0 / 10946.0, 1e-15);
    EXPECT_NEAR(fsrv::ratio(21, 1), 1.6180339850173579, 1e-15);
    EXPECT_EQ(fsrv::ratio(5, 0), 1.0);
    EXPECT_NEAR(fsrv::ratio(10, 2), 144.0 / 55.0, 1e-15);
    EXPECT_THROW(fsrv::ratio(0, 1), fsrv::DomainError);
}

// |a_{n+1}/a_n - phi| = 1 / (a_n (a_n phi + a_{n-1})) <= 1 / a_n^2.
TEST(Fib, RatioConvergenceBound) {
    for (int n = 1; n <= 80; ++n) {
        const double an = fsrv::fib_double(n);
        const double err = std::abs(fsrv::ratio(n, 1) - fsrv::kPhi);
        // Below about 1e-16 the double result sits on its rounding floor.
        const double bound = std::max(1.0 / (an * an), 2.0 * std::numeric_limits<double>::epsilon());
        ASSERT_LE(err, bound) << n;
    }
}

TEST(Fib, RatioConvergenceBoundExact) {
    using boost::multiprecision::cpp_int;
    // Exact form: |a_{n+1} a_n - phi a_n^2| <= 1, i.e. (2 a_{n+1} - a_n)^2 - 5 a_n^2 = 4 (-1)^n,
    // checked in integers so no rounding enters.
    for (int n = 1; n <= 80; ++n) {
        const cpp_int an(fsrv::fib(n));
        const cpp_int an1(fsrv::fib(n + 1));
        const cpp_int lhs = (2 * an1 - an) * (2 * an1 - an) - 5 * an * an;
        ASSERT_EQ(lhs, n % 2 == 0 ? 4 : -4) << n;
    }
}

TEST(Fib, GoldenRatioConstant) {
    EXPECT_NEAR(fsrv::kPhi * fsrv::kPhi, fsrv::kPhi + 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(fsrv::kPhi, (1.0 + std::sqrt(5.0)) / 2.0);
}

TEST(Fib, TableDoubles) {
    const auto& t = fsrv::FibTable::instance();
    EXPECT_EQ(t.max_index(), 186);
    EXPECT_EQ(t.as_double(78), 8944394323791464.0);
    EXPECT_EQ(t.at(50), FibInt(12586269025ULL));
}

}  // namespace
