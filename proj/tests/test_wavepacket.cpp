#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qrel/constants.hpp"
#include "qrel/wavepacket.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <sstream>

using namespace qrel;
using namespace qrel::wave;

namespace {

constexpr double kPi = std::numbers::pi;

// Natural units (hbar = 1, m = 1) used throughout unless stated otherwise.
const Grid1D packet_grid(-256.0, 256.0, 2048);

WavePacket base_packet(double k0 = 0.0) {
    return init_gaussian(packet_grid, 0.0, 8.0, k0, 1.0, 1.0);
}

// Interference geometry that resolves several fringes on a 4096-point grid:
// wavelength 2*pi/(m v) = 50.27, expected spacing lambda L / d = 233.4. The
// separation-to-width ratio d/w = 28 keeps the Gaussian diffraction envelope
// much wider than one fringe, so envelope gradients shift the measured peak
// spacing by well under a percent.
const Grid1D slit_grid(-2048.0, 2048.0, 4096);
const SlitConfig slit_config{112.0, 4.0, 520.0, 0.125};

} // namespace

TEST_CASE("gaussian initialization is normalized and centered") {
    const auto p = init_gaussian(packet_grid, 3.0, 8.0, 0.0, 1.0, 1.0);
    CHECK(std::abs(p.norm_sq() - 1.0) < 1e-12);
    CHECK(std::abs(p.mean_position() - 3.0) < packet_grid.dx());
}

TEST_CASE("the central momentum matches the requested wavenumber") {
    const auto p = base_packet(0.5);
    CHECK(p.mean_momentum() == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("under-resolved or boundary-clipped packets are rejected") {
    CHECK_THROWS_AS(init_gaussian(packet_grid, 0.0, 0.5, 0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(init_gaussian(packet_grid, 230.0, 8.0, 0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("zero evolution steps are the identity") {
    const auto p = base_packet(0.3);
    const auto out = evolve_free(p, 0.01, 0);
    CHECK((out.amplitudes - p.amplitudes).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("a gaussian spreads by sqrt(2) at its characteristic time") {
    const auto p = base_packet();
    // t = 2 m sigma0^2 / hbar makes the spreading parameter exactly 1.
    const auto out = evolve_free(p, 0.02, 6400);
    CHECK(out.position_spread() ==
          doctest::Approx(8.0 * std::sqrt(2.0)).epsilon(0.005));
    CHECK(std::abs(out.norm_sq() - 1.0) < 1e-10);
}

TEST_CASE("a plane-wave mode only picks up the dispersion phase") {
    const Eigen::Index mode = 16;
    const double k = packet_grid.k(mode);
    const double span = packet_grid.x_max - packet_grid.x_min;
    WavePacket p{packet_grid, Eigen::VectorXcd(packet_grid.n_points), 1.0, 1.0};
    for (Eigen::Index i = 0; i < packet_grid.n_points; ++i)
        p.amplitudes[i] = std::polar(1.0 / std::sqrt(span), k * packet_grid.x(i));

    const double t = 0.8;
    const auto out = evolve_free(p, t / 100.0, 100);
    const std::complex<double> phase = std::polar(1.0, -k * k * t / 2.0);
    for (Eigen::Index i = 0; i < packet_grid.n_points; i += 97)
        CHECK(std::abs(out.amplitudes[i] - phase * p.amplitudes[i]) < 1e-12);
}

TEST_CASE("norm and energy survive ten thousand steps") {
    const auto p = base_packet(0.4);
    const double e0 = p.mean_k_squared();
    const auto out = evolve_free(p, 0.01, 10000);
    CHECK(std::abs(out.norm_sq() - 1.0) < 1e-10);
    CHECK(std::abs(out.mean_k_squared() - e0) < 1e-10 * e0);
}

TEST_CASE("evolution is time reversible") {
    const auto p = base_packet(0.4);
    const auto back = evolve_free(evolve_free(p, 0.02, 500), -0.02, 500);
    CHECK((back.amplitudes - p.amplitudes).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("the aliasing guard rejects oversized steps") {
    const auto p = base_packet();
    // k_max = pi / 0.25, so dt beyond 2 pi / k_max^2 aliases.
    CHECK_THROWS_AS(evolve_free(p, 0.05, 10), std::domain_error);
}

TEST_CASE("degenerate slit geometry is rejected") {
    CHECK_THROWS(double_slit(SlitConfig{0.0, 4.0, 520.0, 0.125}, 1.0, slit_grid, 1.0));
}

TEST_CASE("fringe spacing follows the two-slit law") {
    const auto result = double_slit(slit_config, 1.0, slit_grid, 1.0);
    const double expected = result.wavelength * slit_config.screen_distance /
                            slit_config.slit_separation;
    CHECK(std::abs(result.fringe_spacing - expected) < 0.02 * expected);
    CHECK(result.wavelength ==
          doctest::Approx(2.0 * kPi / slit_config.packet_speed).epsilon(1e-12));
}

TEST_CASE("doubling the separation halves the fringe spacing") {
    // A wide grid accommodates the broad envelope of the narrow-separation run
    // while both separations share the same screen distance.
    const Grid1D wide_grid(-8192.0, 8192.0, 16384);
    SlitConfig narrow = slit_config;
    narrow.slit_separation = 100.0;
    narrow.screen_distance = 1700.0;
    SlitConfig doubled = narrow;
    doubled.slit_separation = 200.0;
    const auto a = double_slit(narrow, 1.0, wide_grid, 1.0);
    const auto b = double_slit(doubled, 1.0, wide_grid, 1.0);
    CHECK(std::abs(a.fringe_spacing - 2.0 * b.fringe_spacing) <
          0.02 * 2.0 * b.fringe_spacing);
}

TEST_CASE("a micron-wavelength SI configuration produces centimeter fringes") {
    // lambda = 1 um at electron mass fixes the speed; d = 100 um, L = 1 m
    // should give 1 cm fringes.
    const double lambda = 1e-6;
    const double mass = constants::electron_mass;
    const double v = constants::planck_h / (lambda * mass);
    const Grid1D grid(-0.125, 0.125, 1 << 24);
    const SlitConfig config{100e-6, 3.5e-6, 1.0, v};
    const auto result = double_slit(config, mass, grid);
    CHECK(std::abs(result.fringe_spacing - 0.01) < 0.02 * 0.01);
}

TEST_CASE("violated far-field and resolution preconditions raise errors") {
    SlitConfig near_field = slit_config;
    near_field.screen_distance = 10.0;
    CHECK_THROWS_AS(double_slit(near_field, 1.0, slit_grid, 1.0), std::domain_error);
    CHECK_THROWS_AS(double_slit(slit_config, 100.0, slit_grid, 1.0), std::domain_error);
}

TEST_CASE("equal masses make the frame swap a no-op") {
    const auto report = frame_swapped_run(slit_config, 1.0, 1.0, slit_grid, 1.0);
    REQUIRE(report.lab.intensity.size() == report.swapped.intensity.size());
    for (std::size_t i = 0; i < report.lab.intensity.size(); ++i)
        CHECK(std::abs(report.lab.intensity[i] - report.swapped.intensity[i]) < 1e-10);
    CHECK(report.dilation_factor == doctest::Approx(1.0));
}

TEST_CASE("a 100x heavier frame contracts the fringes tenfold") {
    const auto report = frame_swapped_run(slit_config, 1.0, 100.0, slit_grid, 1.0);
    CHECK(report.dilation_factor == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(std::abs(report.swapped.fringe_spacing - report.expected_swapped_spacing) <
          0.02 * report.expected_swapped_spacing);
    CHECK(std::abs(report.debroglie_forward - 1.0) < 1e-9);
    CHECK(std::abs(report.debroglie_backward - 1.0) < 1e-9);
}

TEST_CASE("synthetic fringes are measured at their construction spacing") {
    const double spacing = 7.0;
    std::vector<double> xs, intensity;
    for (int i = -350; i <= 350; ++i) {
        const double x = 0.1 * i;
        xs.push_back(x);
        const double c = std::cos(kPi * x / spacing);
        intensity.push_back(c * c * std::exp(-x * x / 800.0));
    }
    CHECK(fringe_spacing(xs, intensity) == doctest::Approx(spacing).epsilon(0.01));

    std::vector<double> flat(xs.size(), 1.0);
    CHECK_THROWS_AS(fringe_spacing(xs, flat), std::domain_error);
}

TEST_CASE("the intensity CSV round-trips at full precision") {
    DoubleSlitResult r;
    r.positions = {-1.0, 0.0, 1.0 / 3.0};
    r.intensity = {0.12345678901234567, 1.0, 2e-17};
    const std::string csv = intensity_csv(r);
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "x_meters,intensity");
    for (std::size_t i = 0; i < r.positions.size(); ++i) {
        REQUIRE(std::getline(in, line));
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        CHECK(std::strtod(line.substr(0, comma).c_str(), nullptr) == r.positions[i]);
        CHECK(std::strtod(line.substr(comma + 1).c_str(), nullptr) == r.intensity[i]);
    }
}
