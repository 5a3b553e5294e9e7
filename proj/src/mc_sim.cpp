#include "elg/mc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "elg/error.hpp"
#include "elg/philox.hpp"
#include "elg/wigner.hpp"
#include "parallel.hpp"

namespace elg {

namespace {

constexpr std::uint32_t kTrajectoryDomain = 0x54524a00u;
constexpr std::uint32_t kBootstrapDomain = 0x42535400u;

std::size_t table_size(int dim, int arity) {
    std::size_t n = 1;
    for (int i = 0; i < arity; ++i) {
        n *= static_cast<std::size_t>(dim);
    }
    return n;
}

// Inverse-CDF sampling; zero-probability cells are never selected.
int draw(std::span<const double> cdf, double u) {
    for (std::size_t i = 0; i + 1 < cdf.size(); ++i) {
        if (u < cdf[i]) {
            return static_cast<int>(i);
        }
    }
    return static_cast<int>(cdf.size() - 1);
}

class TransitionSampler {
public:
    TransitionSampler(const SpinValue& spin, const MeasurementSchedule& schedule)
        : dim_(spin.dim()), n_(schedule.n()), cdf_(static_cast<std::size_t>(dim_ * dim_)) {
        const auto d = wigner_d(spin, RotationAngle(schedule.step()));
        for (int from = 0; from < dim_; ++from) {
            double acc = 0.0;
            for (int to = 0; to < dim_; ++to) {
                acc += d(to, from) * d(to, from);
                cdf_[static_cast<std::size_t>(from * dim_ + to)] = acc;
            }
            for (int to = 0; to < dim_; ++to) {
                cdf_[static_cast<std::size_t>(from * dim_ + to)] /= acc;
            }
        }
    }

    // Writes the outcome indices of shot `shot` into `out` (size n).
    void sample(const PhiloxStream& stream, std::uint64_t shot, std::span<int> out) const {
        const auto u01 = stream.uniform_pair(shot, 0);
        const auto u23 = stream.uniform_pair(shot, 1);
        const double u[4] = {u01[0], u01[1], u23[0], u23[1]};
        out[0] = std::min(dim_ - 1, static_cast<int>(u[0] * dim_));
        for (int k = 1; k < n_; ++k) {
            const auto from = static_cast<std::size_t>(out[static_cast<std::size_t>(k - 1)]);
            out[static_cast<std::size_t>(k)] =
                draw(std::span<const double>(cdf_).subspan(from * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)), u[k]);
        }
    }

private:
    int dim_;
    int n_;
    std::vector<double> cdf_;
};

void check_schedule(const MeasurementSchedule& schedule) {
    if (schedule.n() > kMaxSampledMeasurements) {
        throw Error(ErrorCode::UnsupportedArity,
                    "sampling supports at most " + std::to_string(kMaxSampledMeasurements) + " measurements");
    }
}

double plugin_entropy(std::span<const std::uint64_t> counts, std::uint64_t shots, bool miller_madow) {
    const double total = static_cast<double>(shots);
    double h = 0.0;
    int occupied = 0;
    for (auto c : counts) {
        if (c > 0) {
            const double p = static_cast<double>(c) / total;
            h -= p * std::log2(p);
            ++occupied;
        }
    }
    if (miller_madow) {
        h += (occupied - 1) / (2.0 * total * std::log(2.0));
    }
    return h;
}

void require_pair_counts(const EmpiricalTable& t) {
    if (t.arity() != 2) {
        throw Error(ErrorCode::UnsupportedArity, "empirical conditional entropy requires pair counts");
    }
}

double deficit_from(double step_entropy, double total_entropy, int n, const SpinValue& spin) {
    return ((n - 1) * step_entropy - total_entropy) / std::log2(spin.dim());
}

EmpiricalTable resample(const EmpiricalTable& table, const PhiloxStream& stream, std::uint64_t replicate) {
    const auto counts = table.counts();
    std::vector<double> cdf(counts.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        acc += static_cast<double>(counts[i]);
        cdf[i] = acc / static_cast<double>(table.shots());
    }
    std::vector<std::uint64_t> out(counts.size(), 0);
    const std::uint64_t shots = table.shots();
    for (std::uint64_t j = 0; j < shots; j += 4) {
        const auto w = stream.words(replicate, static_cast<std::uint32_t>(j / 4));
        const std::uint64_t lanes = std::min<std::uint64_t>(4, shots - j);
        for (std::uint64_t k = 0; k < lanes; ++k) {
            const double u = static_cast<double>(w[k]) * 0x1.0p-32;
            ++out[static_cast<std::size_t>(draw(cdf, u))];
        }
    }
    return EmpiricalTable(table.spin(), table.arity(), std::move(out));
}

} // namespace

EmpiricalTable::EmpiricalTable(SpinValue spin, int arity, std::vector<std::uint64_t> counts)
    : spin_(spin), arity_(arity), counts_(std::move(counts)), shots_(0) {
    if (arity < 1) {
        throw Error(ErrorCode::UnsupportedArity, "empirical table arity must be at least 1");
    }
    if (counts_.size() != table_size(spin_.dim(), arity_)) {
        throw Error(ErrorCode::InconsistentDimensions, "empirical table has the wrong number of cells");
    }
    shots_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
    if (shots_ == 0) {
        throw Error(ErrorCode::InvalidArgument, "empirical table needs at least one shot");
    }
}

JointProbTable EmpiricalTable::probabilities() const {
    std::vector<double> probs(counts_.size());
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        probs[i] = static_cast<double>(counts_[i]) / static_cast<double>(shots_);
    }
    return JointProbTable(spin_, arity_, std::move(probs));
}

EmpiricalTable EmpiricalTable::marginal(std::initializer_list<int> keep_axes) const {
    const JointProbTable shape = JointProbTable::uniform(spin_, arity_);
    const int kept = static_cast<int>(keep_axes.size());
    if (kept < 1 || kept > arity_) {
        throw Error(ErrorCode::UnsupportedArity, "marginal must keep between 1 and arity axes");
    }
    for (int a : keep_axes) {
        if (a < 0 || a >= arity_ || std::count(keep_axes.begin(), keep_axes.end(), a) != 1) {
            throw Error(ErrorCode::InvalidArgument, "invalid or repeated marginal axis");
        }
    }
    std::vector<std::uint64_t> out(table_size(spin_.dim(), kept), 0);
    for (std::size_t cell = 0; cell < counts_.size(); ++cell) {
        const auto q = shape.unflatten(cell);
        std::size_t target = 0;
        for (int a : keep_axes) {
            target = target * static_cast<std::size_t>(spin_.dim()) + static_cast<std::size_t>(q[static_cast<std::size_t>(a)]);
        }
        out[target] += counts_[cell];
    }
    return EmpiricalTable(spin_, kept, std::move(out));
}

Trajectory sample_trajectory(const SpinValue& spin, const MeasurementSchedule& schedule, std::uint64_t seed,
                             std::uint64_t shot) {
    check_schedule(schedule);
    const TransitionSampler sampler(spin, schedule);
    std::vector<int> idx(static_cast<std::size_t>(schedule.n()));
    sampler.sample(PhiloxStream(seed, kTrajectoryDomain), shot, idx);
    Trajectory t{{}, seed, shot};
    for (int i : idx) {
        t.twice_m.push_back(spin.twice_m(i));
    }
    return t;
}

EmpiricalTable sample_trajectories(const SpinValue& spin, const MeasurementSchedule& schedule, std::uint64_t shots,
                                   std::uint64_t seed, int workers) {
    check_schedule(schedule);
    if (shots < 1) {
        throw Error(ErrorCode::InvalidArgument, "shots must be at least 1");
    }
    const TransitionSampler sampler(spin, schedule);
    const PhiloxStream stream(seed, kTrajectoryDomain);
    const int n = schedule.n();
    const auto cells = table_size(spin.dim(), n);
    const auto shards = static_cast<std::size_t>(std::max(1, workers));
    std::vector<std::vector<std::uint64_t>> partial(shards, std::vector<std::uint64_t>(cells, 0));

    // Shards are contiguous shot ranges; each shot's numbers depend only on (seed, shot).
    const std::uint64_t per_shard = (shots + shards - 1) / shards;
    detail::parallel_for(shards, static_cast<int>(shards), [&](std::size_t begin, std::size_t end) {
        std::vector<int> idx(static_cast<std::size_t>(n));
        for (std::size_t s = begin; s < end; ++s) {
            auto& counts = partial[s];
            const std::uint64_t first = s * per_shard;
            const std::uint64_t last = std::min<std::uint64_t>(shots, first + per_shard);
            for (std::uint64_t shot = first; shot < last; ++shot) {
                sampler.sample(stream, shot, idx);
                std::size_t cell = 0;
                for (int i : idx) {
                    cell = cell * static_cast<std::size_t>(spin.dim()) + static_cast<std::size_t>(i);
                }
                ++counts[cell];
            }
        }
    });

    std::vector<std::uint64_t> merged(cells, 0);
    for (const auto& p : partial) {
        for (std::size_t c = 0; c < cells; ++c) {
            merged[c] += p[c];
        }
    }
    return EmpiricalTable(spin, n, std::move(merged));
}

double empirical_conditional_entropy(const EmpiricalTable& pair, bool miller_madow) {
    require_pair_counts(pair);
    const auto first = pair.marginal({0});
    return plugin_entropy(pair.counts(), pair.shots(), miller_madow) -
           plugin_entropy(first.counts(), first.shots(), miller_madow);
}

DeficitEstimate empirical_deficit(const EmpiricalTable& step_pair, const EmpiricalTable& total_pair,
                                  const EstimatorOptions& options) {
    require_pair_counts(step_pair);
    require_pair_counts(total_pair);
    if (step_pair.spin() != total_pair.spin() || step_pair.shots() != total_pair.shots()) {
        throw Error(ErrorCode::InconsistentDimensions, "step and total tables need the same spin and shot count");
    }
    if (options.n < 2) {
        throw Error(ErrorCode::InvalidArgument, "information deficit needs n >= 2");
    }
    if (options.bootstrap_resamples < 2) {
        throw Error(ErrorCode::InvalidArgument, "bootstrap needs at least 2 resamples");
    }
    for (const auto* t : {&step_pair, &total_pair}) {
        const auto first = t->marginal({0});
        if (std::any_of(first.counts().begin(), first.counts().end(), [](std::uint64_t c) { return c == 0; })) {
            throw Error(ErrorCode::DegenerateTable,
                        "an earlier-time outcome has zero counts; its conditional distribution is undefined");
        }
    }

    const auto& spin = step_pair.spin();
    DeficitEstimate estimate;
    estimate.value = deficit_from(empirical_conditional_entropy(step_pair, options.miller_madow),
                                  empirical_conditional_entropy(total_pair, options.miller_madow), options.n, spin);

    const auto resamples = static_cast<std::size_t>(options.bootstrap_resamples);
    std::vector<double> replicates(resamples);
    const PhiloxStream step_stream(options.bootstrap_seed, kBootstrapDomain);
    const PhiloxStream total_stream(options.bootstrap_seed, kBootstrapDomain + 1);
    detail::parallel_for(resamples, options.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            const auto step = resample(step_pair, step_stream, r);
            const auto total = resample(total_pair, total_stream, r);
            replicates[r] = deficit_from(empirical_conditional_entropy(step, options.miller_madow),
                                         empirical_conditional_entropy(total, options.miller_madow), options.n, spin);
        }
    });
    const double mean = std::accumulate(replicates.begin(), replicates.end(), 0.0) / static_cast<double>(resamples);
    double ss = 0.0;
    for (double v : replicates) {
        ss += (v - mean) * (v - mean);
    }
    estimate.standard_error = std::sqrt(ss / static_cast<double>(resamples - 1));
    return estimate;
}

} // namespace elg
