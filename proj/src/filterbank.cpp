#include "graphframe/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "graphframe/pointset.hpp"

namespace graphframe {

double smoothstep7(double s) {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    const double s4 = (s * s) * (s * s);
    return 1.0 - s4 * (35.0 + s * (-84.0 + s * (70.0 - 20.0 * s)));
}

double plateau(double u, double base) {
    if (!(u >= 0.0)) throw std::domain_error("plateau: argument must be >= 0");
    if (!(base > 1.0)) throw std::invalid_argument("plateau: base must be > 1");
    const double knee = 1.0 / base;
    if (u <= knee) return 1.0;
    if (u >= 1.0) return 0.0;
    return smoothstep7((u - knee) / (1.0 - knee));
}

FilterBank::FilterBank(FilterBankParams params, double rescale)
    : params_(params), rescale_(rescale) {
    if (!(params_.base > 1.0)) throw std::invalid_argument("FilterBank: base must be > 1");
    if (params_.max_scale < 0) throw std::invalid_argument("FilterBank: need at least one band");
    if (!(rescale_ > 0.0) || !std::isfinite(rescale_))
        throw std::invalid_argument("FilterBank: rescale factor must be > 0");
}

double FilterBank::zeta(int k, double x) const {
    if (k < 0 || k > params_.max_scale)
        throw std::out_of_range("zeta: scale " + std::to_string(k) + " outside 0.." +
                                std::to_string(params_.max_scale));
    if (!(x >= 0.0)) throw std::domain_error("zeta: argument must be >= 0");
    if (k == 0) return g(x);
    const double b = params_.base;
    const double coarse = g(x * std::pow(b, -k));
    const double fine = g(x * std::pow(b, -(k - 1)));
    // g is monotone, but round-off in h can leave a -1e-17 difference.
    return std::max(coarse - fine, 0.0);
}

double FilterBank::zeta_at_eigenvalue(int k, double lambda) const {
    return zeta(k, rescale_ * lambda);
}

double FilterBank::covered_limit() const {
    return std::pow(params_.base, params_.max_scale - 1);
}

void FilterBank::export_curves(const std::filesystem::path& path, double x_max,
                               int points) const {
    if (points < 2) throw std::invalid_argument("export_curves: need at least two samples");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << 'x';
    for (int k = 0; k < num_bands(); ++k) out << ",zeta" << k;
    out << '\n';
    for (int i = 0; i < points; ++i) {
        const double x = x_max * i / (points - 1);
        out << format_double(x);
        for (int k = 0; k < num_bands(); ++k) out << ',' << format_double(zeta(k, x));
        out << '\n';
    }
}

FilterBank fit_rescale(FilterBankParams params, double lambda_max) {
    if (!(lambda_max >= 0.0)) throw std::invalid_argument("fit_rescale: lambda_max must be >= 0");
    if (lambda_max == 0.0) return FilterBank(params, 1.0);
    return FilterBank(params, std::pow(params.base, params.max_scale - 1) / lambda_max);
}

double partition_check(const FilterBank& fb, std::span<const double> grid) {
    double worst = 0.0;
    for (double x : grid) {
        double sum = 0.0;
        for (int k = 0; k < fb.num_bands(); ++k) sum += fb.zeta(k, x);
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

}  // namespace graphframe
