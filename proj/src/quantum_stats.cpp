#include "elg/quantum_stats.hpp"

#include <cmath>
#include <vector>

#include "elg/error.hpp"
#include "elg/wigner.hpp"

namespace elg {

MeasurementSchedule::MeasurementSchedule(int n, double theta_total) : n_(n), theta_total_(theta_total) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidArgument, "a measurement schedule needs at least 2 measurements");
    }
    if (!std::isfinite(theta_total)) {
        throw Error(ErrorCode::InvalidArgument, "schedule angle must be finite");
    }
}

JointProbTable rotor_pair_table(const SpinValue& spin, RotationAngle theta) {
    const auto d = wigner_d(spin, theta);
    const int dim = spin.dim();
    const double weight = 1.0 / dim;
    std::vector<double> probs(static_cast<std::size_t>(dim * dim));
    for (int earlier = 0; earlier < dim; ++earlier) {
        for (int later = 0; later < dim; ++later) {
            const double amp = d(later, earlier);
            probs[static_cast<std::size_t>(earlier * dim + later)] = weight * amp * amp;
        }
    }
    return JointProbTable(spin, 2, std::move(probs));
}

JointProbTable rotor_sequential_joint(const SpinValue& spin, const MeasurementSchedule& schedule) {
    if (schedule.n() != 3) {
        throw Error(ErrorCode::UnsupportedArity, "sequential joint tables are only built for n = 3");
    }
    const auto d = wigner_d(spin, RotationAngle(schedule.step()));
    const int dim = spin.dim();
    const double weight = 1.0 / dim;
    std::vector<double> probs(static_cast<std::size_t>(dim * dim * dim));
    for (int q1 = 0; q1 < dim; ++q1) {
        for (int q2 = 0; q2 < dim; ++q2) {
            const double first = d(q2, q1) * d(q2, q1);
            for (int q3 = 0; q3 < dim; ++q3) {
                const double second = d(q3, q2) * d(q3, q2);
                probs[static_cast<std::size_t>((q1 * dim + q2) * dim + q3)] = weight * first * second;
            }
        }
    }
    return JointProbTable(spin, 3, std::move(probs));
}

JointProbTable singlet_pair_table(const SpinValue& spin, RotationAngle theta_ab) {
    const auto d = wigner_d(spin, theta_ab);
    const int dim = spin.dim();
    const double weight = 1.0 / dim;
    std::vector<double> probs(static_cast<std::size_t>(dim * dim));
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            const double amp = d(a, spin.mirror(b));
            probs[static_cast<std::size_t>(a * dim + b)] = weight * amp * amp;
        }
    }
    return JointProbTable(spin, 2, std::move(probs));
}

JointProbTable relabel_antipodal(const JointProbTable& table) {
    if (table.arity() != 2) {
        throw Error(ErrorCode::UnsupportedArity, "antipodal relabeling requires an arity-2 table");
    }
    const auto& spin = table.spin();
    const int dim = spin.dim();
    std::vector<double> probs(static_cast<std::size_t>(dim * dim));
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            probs[static_cast<std::size_t>(a * dim + b)] = table.at({a, spin.mirror(b)});
        }
    }
    return JointProbTable(spin, 2, std::move(probs));
}

} // namespace elg
