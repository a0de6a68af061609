#include "flowtext/flow.hpp"

#include <cmath>

#include "flowtext/errors.hpp"

namespace flowtext {

namespace {

Vec2 bilinear_displacement(const FlowField& f, const Vec2& p) {
  const double fx = std::floor(p.x());
  const double fy = std::floor(p.y());
  int x0 = static_cast<int>(fx);
  int y0 = static_cast<int>(fy);
  // At the far edge the interpolation cell collapses onto the last pixel.
  if (x0 >= f.width() - 1) x0 = f.width() - 2;
  if (y0 >= f.height() - 1) y0 = f.height() - 2;
  if (f.width() == 1) x0 = 0;
  if (f.height() == 1) y0 = 0;
  const int x1 = std::min(x0 + 1, f.width() - 1);
  const int y1 = std::min(y0 + 1, f.height() - 1);
  const double ax = p.x() - static_cast<double>(x0);
  const double ay = p.y() - static_cast<double>(y0);
  const double wtl = (1.0 - ax) * (1.0 - ay);
  const double wtr = ax * (1.0 - ay);
  const double wbl = (1.0 - ax) * ay;
  const double wbr = ax * ay;
  const double du = wtl * f.u.at(x0, y0) + wtr * f.u.at(x1, y0) +
                    wbl * f.u.at(x0, y1) + wbr * f.u.at(x1, y1);
  const double dv = wtl * f.v.at(x0, y0) + wtr * f.v.at(x1, y0) +
                    wbl * f.v.at(x0, y1) + wbr * f.v.at(x1, y1);
  return {du, dv};
}

}  // namespace

Vec2 sample_flow(const FlowField& f, const Vec2& p) {
  if (f.width() < 1 || f.height() < 1)
    throw ContractError("flow field is empty");
  if (!p.allFinite() || !f.in_domain(p))
    throw OutOfBoundsError("flow sample outside field domain");
  return bilinear_displacement(f, p);
}

Vec2 map_point(const FlowField& f, const Vec2& p) {
  return p + sample_flow(f, p);
}

Trajectory chain(const FlowSeq& flows, const Vec2& start) {
  for (std::size_t i = 1; i < flows.size(); ++i) {
    if (flows[i]->width() != flows[0]->width() ||
        flows[i]->height() != flows[0]->height())
      throw ContractError("chained flow fields disagree in size");
  }

  Trajectory t;
  t.points.reserve(flows.size() + 1);
  t.alive.reserve(flows.size() + 1);

  Vec2 p = start;
  bool alive = !flows.empty() ? flows[0]->in_domain(p) : true;
  if (flows.empty()) {
    t.points.push_back(p);
    t.alive.push_back(1);
    return t;
  }
  t.points.push_back(p);
  t.alive.push_back(alive ? 1 : 0);

  for (const FlowField* f : flows) {
    if (alive) {
      const Vec2 next = p + bilinear_displacement(*f, p);
      if (f->in_domain(next)) {
        p = next;
      } else {
        alive = false;
      }
    }
    t.points.push_back(p);
    t.alive.push_back(alive ? 1 : 0);
  }
  return t;
}

FlowSeq forward_sequence(std::span<const FlowField> flows_fwd, int t, int k) {
  if (k < t) throw ContractError("forward_sequence requires k >= t");
  if (k > t && static_cast<std::size_t>(k) > flows_fwd.size())
    throw ContractError("missing forward flow field for requested range");
  FlowSeq seq;
  seq.reserve(static_cast<std::size_t>(k - t));
  for (int i = t; i < k; ++i) seq.push_back(&flows_fwd[i]);
  return seq;
}

FlowSeq reversed_sequence(std::span<const FlowField> flows_bwd, int t, int k) {
  if (k > t) throw ContractError("reversed_sequence requires k <= t");
  if (t > k && static_cast<std::size_t>(t) > flows_bwd.size() + 0u)
    throw ContractError("missing backward flow field for requested range");
  FlowSeq seq;
  seq.reserve(static_cast<std::size_t>(t - k));
  for (int i = t - 1; i >= k; --i) seq.push_back(&flows_bwd[i]);
  return seq;
}

MagnitudeStats magnitude_stats(std::span<const double> magnitudes) {
  if (magnitudes.empty())
    throw EmptyInputError("magnitude statistics over empty set");
  double sum = 0.0;
  for (double m : magnitudes) sum += m;
  const double mu = sum / static_cast<double>(magnitudes.size());
  double var_sum = 0.0;
  for (double m : magnitudes) {
    const double d = m - mu;
    var_sum += d * d;
  }
  const double sigma =
      std::sqrt(var_sum / static_cast<double>(magnitudes.size()));
  return {mu, sigma};
}

MagnitudeStats magnitude_stats(const FlowField& f,
                               std::span<const PixelCoord> points) {
  if (points.empty())
    throw EmptyInputError("magnitude statistics over empty point set");
  std::vector<double> mags;
  mags.reserve(points.size());
  for (const auto& pt : points) {
    const Vec2 d = sample_flow(f, Vec2(pt.x, pt.y));
    mags.push_back(d.norm());
  }
  return magnitude_stats(mags);
}

}  // namespace flowtext
