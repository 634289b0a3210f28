#include "holonomy2/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace holonomy2 {

std::vector<double> simpson_weights(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("simpson_weights: interval count must be even and >= 2");
  std::vector<double> w(n + 1, 0.0);
  const double h = 1.0 / n;
  w[0] = w[n] = h / 3.0;
  for (int i = 1; i < n; ++i) w[i] = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
  return w;
}

Vec integrate_samples(const std::vector<Vec>& samples) {
  if (samples.empty()) throw std::invalid_argument("integrate_samples: empty grid");
  const int n = static_cast<int>(samples.size()) - 1;
  if (n == 0) return samples[0];
  Vec acc = Vec::Zero(samples[0].size());
  if (n == 1) return 0.5 * (samples[0] + samples[1]);
  int head = n;
  bool tail38 = false;
  if (n % 2 != 0) {
    if (n < 3) throw std::invalid_argument("integrate_samples: bad grid");
    head = n - 3;
    tail38 = true;
  }
  const double h = 1.0 / n;
  if (head >= 2) {
    acc += samples[0] + samples[head];
    for (int i = 1; i < head; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * samples[i];
    acc *= h / 3.0;
  }
  if (tail38) {
    acc += (3.0 * h / 8.0) *
           (samples[head] + 3.0 * samples[head + 1] + 3.0 * samples[head + 2] + samples[n]);
  }
  return acc;
}

Mat expm(const Mat& A) {
  const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  Mat B = A;
  if (norm > 0.5) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / 0.5))));
    B /= std::pow(2.0, squarings);
  }
  const Eigen::Index d = A.rows();
  Mat term = Mat::Identity(d, d);
  Mat sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = (term * B) / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

double wedge_norm(const Vec& a, const Vec& b) {
  // |a| * |b_perp| rather than sqrt(|a|^2|b|^2 - <a,b>^2); the latter loses
  // half the digits for near-parallel inputs.
  const double na2 = a.squaredNorm();
  if (na2 == 0.0) return 0.0;
  const Vec perp = b - (a.dot(b) / na2) * a;
  return std::sqrt(na2) * perp.norm();
}

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

double smoothstep_prime(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double u = t * (1.0 - t);
  return 30.0 * u * u;
}

double smootherstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * t * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
}

double smootherstep_prime(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double u = t * (1.0 - t);
  return 140.0 * u * u * u;
}

namespace {
int thread_budget() {
  if (const char* env = std::getenv("HOLONOMY2_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}
}  // namespace

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(n, thread_budget());
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<double> convergence_orders(const std::vector<double>& errs) {
  std::vector<double> orders;
  for (size_t k = 0; k + 1 < errs.size(); ++k) {
    if (errs[k + 1] <= 0.0)
      orders.push_back(std::numeric_limits<double>::infinity());
    else
      orders.push_back(std::log2(errs[k] / errs[k + 1]));
  }
  return orders;
}

}  // namespace holonomy2
