#include "doctest.h"

#include "dietclust/stats.hpp"

using dietclust::quantile;

TEST_CASE("quantile interpolates between order statistics") {
    std::vector<double> v{1, 2, 3, 4, 5};
    CHECK(quantile(v, 0.75) == doctest::Approx(4.0));
    CHECK(quantile(v, 0.5) == doctest::Approx(3.0));
    CHECK(quantile(v, 0.0) == 1.0);
    CHECK(quantile(v, 1.0) == 5.0);

    std::vector<double> w{1, 2, 3, 4};
    CHECK(quantile(w, 0.75) == doctest::Approx(3.25));
    CHECK(quantile(w, 0.25) == doctest::Approx(1.75));
    CHECK(quantile(w, 0.1) == doctest::Approx(1.3));
}

TEST_CASE("quantile handles unsorted input and singletons") {
    std::vector<double> v{5, 1, 4, 2, 3};
    CHECK(quantile(v, 0.75) == doctest::Approx(4.0));
    CHECK(quantile(std::vector<double>{7.5}, 0.33) == 7.5);
}

TEST_CASE("quantile rejects bad input") {
    CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), dietclust::EmptyInput);
    CHECK_THROWS_AS(quantile(std::vector<double>{1, 2}, -0.1), dietclust::InvalidConfig);
    CHECK_THROWS_AS(quantile(std::vector<double>{1, 2}, 1.5), dietclust::InvalidConfig);
}

TEST_CASE("mean and sample std") {
    std::vector<double> sizes{2, 14};
    CHECK(dietclust::mean(sizes) == doctest::Approx(8.0));
    CHECK(dietclust::sample_std(sizes) == doctest::Approx(8.48528137423857).epsilon(1e-12));

    CHECK(std::isnan(dietclust::sample_std(std::vector<double>{3.0})));
    CHECK(dietclust::sample_std(std::vector<double>{5, 5, 5}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(dietclust::mean(std::vector<double>{}), dietclust::EmptyInput);
}
