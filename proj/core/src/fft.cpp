#include "wavequanta/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "wavequanta/error.hpp"

namespace wq::fft {

namespace {

// Planning is not thread-safe in FFTW; execution on distinct arrays is.
struct PlanCache {
    std::mutex mutex;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t, int>, fftw_plan> plans;

    ~PlanCache() {
        for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n0, std::size_t n1, std::size_t n2, int sign) {
        std::lock_guard lock(mutex);
        const auto key = std::make_tuple(n0, n1, n2, sign);
        if (auto it = plans.find(key); it != plans.end()) return it->second;
        std::vector<std::complex<double>> scratch(n0 * n1 * n2);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan plan = (n1 == 1 && n2 == 1)
                             ? fftw_plan_dft_1d(static_cast<int>(n0), buf, buf, sign, flags)
                             : fftw_plan_dft_3d(static_cast<int>(n0), static_cast<int>(n1),
                                                static_cast<int>(n2), buf, buf, sign, flags);
        if (plan == nullptr) throw NumericError("FFTW failed to create a plan");
        plans.emplace(key, plan);
        return plan;
    }
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

int fftw_sign(Sign sign) { return sign == Sign::Minus ? FFTW_FORWARD : FFTW_BACKWARD; }

} // namespace

void transform(std::span<std::complex<double>> data, Sign sign) {
    if (data.empty()) return;
    fftw_plan plan = cache().get(data.size(), 1, 1, fftw_sign(sign));
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

void transform_3d(std::span<std::complex<double>> data, std::size_t n0, std::size_t n1, std::size_t n2,
                  Sign sign) {
    if (data.size() != n0 * n1 * n2) throw ValidationError("transform_3d: size does not match extents");
    if (data.empty()) return;
    fftw_plan plan = cache().get(n0, n1, n2, fftw_sign(sign));
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

} // namespace wq::fft
