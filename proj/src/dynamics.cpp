#include "adcast/dynamics.hpp"

#include <Eigen/LU>
#include <cmath>
#include <utility>

#include "adcast/errors.hpp"

namespace adcast {

namespace {

constexpr double kBoxSlack = 1e-12;

void require_box(Eigen::VectorXd& opinions, const char* context) {
    for (Eigen::Index i = 0; i < opinions.size(); ++i) {
        double& x = opinions(i);
        if (!std::isfinite(x)) {
            throw NonFiniteError(std::string(context) + " produced a non-finite opinion");
        }
        if (x < 0.0) {
            if (x < -kBoxSlack) {
                throw NonFiniteError(std::string(context) + " pushed an opinion below 0 by " +
                                     std::to_string(-x));
            }
            x = 0.0;
        } else if (x > 1.0) {
            if (x > 1.0 + kBoxSlack) {
                throw NonFiniteError(std::string(context) + " pushed an opinion above 1 by " +
                                     std::to_string(x - 1.0));
            }
            x = 1.0;
        }
    }
}

void require_target(int target) {
    if (target != 0 && target != 1) throw Error("target opinion must be 0 or 1");
}

// Pade numerator/denominator pairs from Higham, "The scaling and squaring
// method for the matrix exponential revisited" (2005).
using Matrix = Eigen::MatrixXd;

void pade3(const Matrix& a, Matrix& u, Matrix& v) {
    static const double b[] = {120., 60., 12., 1.};
    const Matrix identity = Matrix::Identity(a.rows(), a.cols());
    const Matrix a2 = a * a;
    u = a * (b[3] * a2 + b[1] * identity);
    v = b[2] * a2 + b[0] * identity;
}

void pade5(const Matrix& a, Matrix& u, Matrix& v) {
    static const double b[] = {30240., 15120., 3360., 420., 30., 1.};
    const Matrix identity = Matrix::Identity(a.rows(), a.cols());
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    u = a * (b[5] * a4 + b[3] * a2 + b[1] * identity);
    v = b[4] * a4 + b[2] * a2 + b[0] * identity;
}

void pade7(const Matrix& a, Matrix& u, Matrix& v) {
    static const double b[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
    const Matrix identity = Matrix::Identity(a.rows(), a.cols());
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * identity);
    v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * identity;
}

void pade9(const Matrix& a, Matrix& u, Matrix& v) {
    static const double b[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                               2162160.,     110880.,     3960.,       90.,        1.};
    const Matrix identity = Matrix::Identity(a.rows(), a.cols());
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix a8 = a6 * a2;
    u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * identity);
    v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * identity;
}

void pade13(const Matrix& a, Matrix& u, Matrix& v) {
    static const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                               1187353796428800.,  129060195264000.,   10559470521600.,
                               670442572800.,      33522128640.,       1323241920.,
                               40840800.,          960960.,            16380.,
                               182.,               1.};
    const Matrix identity = Matrix::Identity(a.rows(), a.cols());
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
             b[1] * identity);
    v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
        b[0] * identity;
}

}  // namespace

BudgetConfig BudgetConfig::discrete(int units, double cap, int target, int campaigns) {
    if (units < 0) throw Error("budget units must be nonnegative");
    if (!(cap > 0.0 && cap < 1.0)) throw Error("control cap must lie in (0, 1)");
    require_target(target);
    if (campaigns < 1) throw Error("at least one campaign is required");
    BudgetConfig config;
    config.total_budget = units * cap;
    config.cap = cap;
    config.units = units;
    config.target = target;
    config.campaigns = campaigns;
    return config;
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a) {
    // 1-norm thresholds for the Pade degrees, double precision.
    static const double theta3 = 1.495585217958292e-2;
    static const double theta5 = 2.539398330063230e-1;
    static const double theta7 = 9.504178996162932e-1;
    static const double theta9 = 2.097847961257068e0;
    static const double theta13 = 5.371920351148152e0;

    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    Matrix u, v;
    int squarings = 0;
    if (norm < theta3) {
        pade3(a, u, v);
    } else if (norm < theta5) {
        pade5(a, u, v);
    } else if (norm < theta7) {
        pade7(a, u, v);
    } else if (norm < theta9) {
        pade9(a, u, v);
    } else {
        std::frexp(norm / theta13, &squarings);
        if (squarings < 0) squarings = 0;
        const Matrix scaled = a * std::ldexp(1.0, -squarings);
        pade13(scaled, u, v);
    }

    Matrix result = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) result = result * result;

    if (!result.allFinite()) {
        throw NonFiniteError("matrix exponential produced a non-finite entry");
    }
    return result;
}

const Eigen::MatrixXd& Propagator::flow(double delta) const {
    auto it = cache_.find(delta);
    if (it == cache_.end()) {
        it = cache_.emplace(delta, matrix_exponential(-delta * laplacian_)).first;
    }
    return it->second;
}

OpinionState Propagator::advance(const OpinionState& state, double delta) const {
    if (!(delta > 0.0)) throw Error("propagation interval must be positive");
    OpinionState next{flow(delta) * state.opinions, state.time + delta};
    require_box(next.opinions, "propagate");
    return next;
}

OpinionState propagate(const OpinionState& state, const Laplacian& laplacian, double delta) {
    return Propagator(laplacian).advance(state, delta);
}

OpinionState apply_campaign(const OpinionState& state, const ControlAction& action, int target) {
    require_target(target);
    if (action.controls.size() != state.opinions.size()) {
        throw Error("control vector size does not match the state");
    }
    if (!(action.cap > 0.0 && action.cap < 1.0)) throw Error("control cap must lie in (0, 1)");
    for (Eigen::Index i = 0; i < action.controls.size(); ++i) {
        const double u = action.controls(i);
        if (!(u >= 0.0 && u <= action.cap)) {
            throw Error("control component outside [0, cap]");
        }
    }
    OpinionState next{
        action.controls * static_cast<double>(target) +
            (Eigen::VectorXd::Ones(state.size()) - action.controls).cwiseProduct(state.opinions),
        state.time};
    require_box(next.opinions, "apply_campaign");
    return next;
}

Eigen::VectorXd consensus_limit(const OpinionState& state, const ClusterPartition& partition,
                                const CentralityVector& centrality) {
    Eigen::VectorXd limits(partition.count());
    for (int c = 0; c < partition.count(); ++c) {
        double acc = 0.0;
        for (int agent : partition.clusters[c]) {
            acc += centrality.values(agent) * state.opinions(agent);
        }
        limits(c) = acc;
    }
    return limits;
}

double cost_infinity(const Eigen::VectorXd& consensus_values, const ClusterPartition& partition,
                     int target) {
    require_target(target);
    if (consensus_values.size() != partition.count()) {
        throw Error("one consensus value per cluster expected");
    }
    double total = 0.0;
    for (int c = 0; c < partition.count(); ++c) {
        total += static_cast<double>(partition.clusters[c].size()) *
                 std::abs(consensus_values(c) - target);
    }
    return total;
}

double cost_finite(const OpinionState& state, int target) {
    require_target(target);
    return (state.opinions.array() - static_cast<double>(target)).abs().sum();
}

}  // namespace adcast
