#include "chanreg/transform.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "chanreg/errors.hpp"

namespace chanreg::transform {

namespace {

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const noexcept {
        if (p != nullptr) fftw_destroy_plan(p);
    }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct BufferDeleter {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

// Plans for one grid. Every plan is in place and created with
// FFTW_UNALIGNED so it can be executed at any offset of a caller's array.
struct PlanSet {
    Plan plane_fwd;   // 2D DFT of one z-plane of a 3D array (stride nz)
    Plan plane_bwd;
    Plan cos_slab;    // REDFT00 of every column in one x-slab, re and im parts
    Plan sin_slab;    // RODFT00 on the interior entries of every column in one x-slab
    Plan planar_fwd;  // 2D DFT of a contiguous nx*ny array
    Plan planar_bwd;
};

constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

std::unique_ptr<PlanSet> make_plans(const Grid& g) {
    const int nx = g.nx(), ny = g.ny(), nz = g.nz();
    std::unique_ptr<void, BufferDeleter> raw(fftw_malloc(sizeof(fftw_complex) * g.size()));
    auto* buf = static_cast<fftw_complex*>(raw.get());
    auto* dbuf = reinterpret_cast<double*>(buf);
    auto plans = std::make_unique<PlanSet>();

    const fftw_iodim plane[2] = {{nx, ny * nz, ny * nz}, {ny, nz, nz}};
    plans->plane_fwd.reset(fftw_plan_guru_dft(2, plane, 0, nullptr, buf, buf, FFTW_FORWARD, kFlags));
    plans->plane_bwd.reset(fftw_plan_guru_dft(2, plane, 0, nullptr, buf, buf, FFTW_BACKWARD, kFlags));

    // Interleaved complex data seen as doubles: a column's real parts sit
    // at stride 2, the imaginary parts one double further.
    const fftw_iodim many[2] = {{ny, 2 * nz, 2 * nz}, {2, 1, 1}};
    const fftw_iodim cos_dim = {nz, 2, 2};
    const fftw_r2r_kind redft = FFTW_REDFT00;
    plans->cos_slab.reset(fftw_plan_guru_r2r(1, &cos_dim, 2, many, dbuf, dbuf, &redft, kFlags));
    const fftw_iodim sin_dim = {nz - 2, 2, 2};
    const fftw_r2r_kind rodft = FFTW_RODFT00;
    plans->sin_slab.reset(fftw_plan_guru_r2r(1, &sin_dim, 2, many, dbuf + 2, dbuf + 2, &rodft, kFlags));

    const fftw_iodim planar[2] = {{nx, ny, ny}, {ny, 1, 1}};
    plans->planar_fwd.reset(fftw_plan_guru_dft(2, planar, 0, nullptr, buf, buf, FFTW_FORWARD, kFlags));
    plans->planar_bwd.reset(fftw_plan_guru_dft(2, planar, 0, nullptr, buf, buf, FFTW_BACKWARD, kFlags));

    if (!plans->plane_fwd || !plans->plane_bwd || !plans->cos_slab || !plans->sin_slab ||
        !plans->planar_fwd || !plans->planar_bwd)
        throw InternalConsistencyError("transform: FFTW failed to create a plan");
    return plans;
}

// The FFTW planner is not thread safe; execution of an existing plan is.
const PlanSet& plans_for(const Grid& g) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, std::unique_ptr<PlanSet>> cache;
    const std::lock_guard lock(mutex);
    auto& slot = cache[{g.nx(), g.ny(), g.nz()}];
    if (!slot) slot = make_plans(g);
    return *slot;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

void check_sizes(const Grid& g, std::size_t phys, std::size_t spec) {
    if (phys != g.size() || spec != g.size())
        throw InvalidFieldError("transform: buffer size does not match grid");
}

void vertical(const Grid& g, Parity parity, const PlanSet& plans, Complex* data) {
    const int nx = g.nx();
    const std::ptrdiff_t slab = 2 * static_cast<std::ptrdiff_t>(g.ny()) * g.nz();
    auto* d = reinterpret_cast<double*>(data);
    fftw_plan plan = parity == Parity::EvenZ ? plans.cos_slab.get() : plans.sin_slab.get();
    const std::ptrdiff_t offset = parity == Parity::EvenZ ? 0 : 2;
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < nx; ++ix) {
        double* p = d + ix * slab + offset;
        fftw_execute_r2r(plan, p, p);
    }
}

void horizontal(const Grid& g, fftw_plan plan, Complex* data) {
    const int nz = g.nz();
#pragma omp parallel for schedule(static)
    for (int iz = 0; iz < nz; ++iz) fftw_execute_dft(plan, as_fftw(data + iz), as_fftw(data + iz));
}

} // namespace

void forward(const Grid& g, Parity parity, std::span<const double> phys, std::span<Complex> spec) {
    check_sizes(g, phys.size(), spec.size());
    const auto& plans = plans_for(g);
    const auto n = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) spec[i] = Complex(phys[i], 0.0);

    horizontal(g, plans.plane_fwd.get(), spec.data());
    vertical(g, parity, plans, spec.data());

    const int nz = g.nz(), N = nz - 1;
    const double h = 1.0 / static_cast<double>(g.planar_size());
    const auto ncol = static_cast<std::ptrdiff_t>(g.planar_size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < ncol; ++c) {
        Complex* col = spec.data() + c * nz;
        if (parity == Parity::EvenZ) {
            col[0] *= h / (2.0 * N);
            for (int m = 1; m < N; ++m) col[m] *= h / N;
            col[N] *= h / (2.0 * N);
        } else {
            col[0] = 0.0;
            for (int m = 1; m < N; ++m) col[m] *= h / N;
            col[N] = 0.0;
        }
    }
}

void inverse(const Grid& g, Parity parity, std::span<const Complex> spec, std::span<double> phys) {
    check_sizes(g, phys.size(), spec.size());
    const auto& plans = plans_for(g);
    std::vector<Complex> work(spec.begin(), spec.end());

    const int nz = g.nz(), N = nz - 1;
    const auto ncol = static_cast<std::ptrdiff_t>(g.planar_size());
    if (parity == Parity::EvenZ) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t c = 0; c < ncol; ++c) {
            work[c * nz] *= 2.0;
            work[c * nz + N] *= 2.0;
        }
    }
    vertical(g, parity, plans, work.data());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < ncol; ++c) {
        Complex* col = work.data() + c * nz;
        for (int k = 0; k < nz; ++k) col[k] *= 0.5;
        if (parity == Parity::OddZ) {
            col[0] = 0.0;
            col[N] = 0.0;
        }
    }
    horizontal(g, plans.plane_bwd.get(), work.data());

    const auto n = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) phys[i] = work[i].real();
}

void forward_2d(const Grid& g, std::span<const double> phys, std::span<Complex> spec) {
    if (phys.size() != g.planar_size() || spec.size() != g.planar_size())
        throw InvalidFieldError("transform: planar buffer size does not match grid");
    const auto& plans = plans_for(g);
    const double h = 1.0 / static_cast<double>(g.planar_size());
    for (std::size_t i = 0; i < phys.size(); ++i) spec[i] = Complex(phys[i], 0.0);
    fftw_execute_dft(plans.planar_fwd.get(), as_fftw(spec.data()), as_fftw(spec.data()));
    for (auto& c : spec) c *= h;
}

void inverse_2d(const Grid& g, std::span<const Complex> spec, std::span<double> phys) {
    if (phys.size() != g.planar_size() || spec.size() != g.planar_size())
        throw InvalidFieldError("transform: planar buffer size does not match grid");
    const auto& plans = plans_for(g);
    std::vector<Complex> work(spec.begin(), spec.end());
    fftw_execute_dft(plans.planar_bwd.get(), as_fftw(work.data()), as_fftw(work.data()));
    for (std::size_t i = 0; i < phys.size(); ++i) phys[i] = work[i].real();
}

} // namespace chanreg::transform
