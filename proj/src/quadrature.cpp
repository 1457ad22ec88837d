#include "sumrules/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "sumrules/summation.hpp"

namespace sumrules {

namespace {

// Kronrod abscissae (descending) and weights; Gauss weights on the odd nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b, value, error;
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(center);
  double kronrod = kWgk[10] * f_center;
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  std::array<double, 10> f1{}, f2{};
  for (std::size_t i = 0; i < 10; ++i) {
    const double dx = half * kXgk[i];
    f1[i] = f(center - dx);
    f2[i] = f(center + dx);
    kronrod += kWgk[i] * (f1[i] + f2[i]);
    abs_sum += kWgk[i] * (std::abs(f1[i]) + std::abs(f2[i]));
    if (i % 2 == 1) gauss += kWg[i / 2] * (f1[i] + f2[i]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[10] * std::abs(f_center - mean);
  for (std::size_t i = 0; i < 10; ++i) asc += kWgk[i] * (std::abs(f1[i] - mean) + std::abs(f2[i] - mean));

  const double value = kronrod * half;
  const double res_abs = abs_sum * std::abs(half);
  const double res_asc = asc * std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  // QUADPACK error scaling.
  if (res_asc != 0.0 && error != 0.0) error = res_asc * std::min(1.0, std::pow(200.0 * error / res_asc, 1.5));
  const double round_off = 50.0 * std::numeric_limits<double>::epsilon() * res_abs;
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * std::numeric_limits<double>::epsilon())) {
    error = std::max(round_off, error);
  }
  return {a, b, value, error};
}

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  QuadratureResult result;
  std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
  Panel first = gauss_kronrod(f, a, b);
  result.evaluations = 21;
  double total_error = first.error;
  double total_value = first.value;
  queue.push(first);

  auto target = [&options](double value) {
    return std::max(options.abs_tol, options.rel_tol * std::abs(value));
  };

  while (total_error > target(total_value) && queue.size() < options.max_panels) {
    const Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // panel cannot be split further
    queue.pop();
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    result.evaluations += 42;
    total_error += left.error + right.error - worst.error;
    total_value += left.value + right.value - worst.value;
    queue.push(left);
    queue.push(right);
  }

  std::vector<Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum value, error;
  for (const Panel& p : panels) {
    value.add(p.value);
    error.add(p.error);
  }
  result.value = value.value();
  result.error = error.value();
  result.panels = panels.size();
  result.converged = result.error <= target(result.value);
  return result;
}

QuadratureResult integrate_endpoint_safe(const std::function<double(double)>& f, double a, double b,
                                         const QuadratureOptions& options) {
  const double quarter = 0.25 * (b - a);
  const double root = std::sqrt(quarter);
  QuadratureOptions part = options;
  part.abs_tol = options.abs_tol / 3.0;
  part.max_panels = std::max<std::size_t>(options.max_panels / 3, 1);

  const auto head = integrate([&](double s) { return 2.0 * s * f(a + s * s); }, 0.0, root, part);
  const auto body = integrate(f, a + quarter, b - quarter, part);
  const auto tail = integrate([&](double s) { return 2.0 * s * f(b - s * s); }, 0.0, root, part);

  QuadratureResult r;
  r.value = CompensatedSum().add(head.value).add(body.value).add(tail.value).value();
  r.error = head.error + body.error + tail.error;
  r.panels = head.panels + body.panels + tail.panels;
  r.evaluations = head.evaluations + body.evaluations + tail.evaluations;
  r.converged = r.error <= std::max(options.abs_tol, options.rel_tol * std::abs(r.value));
  return r;
}

}  // namespace sumrules
