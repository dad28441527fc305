#ifndef TORICVSIT_RENDER_HPP
#define TORICVSIT_RENDER_HPP

#include <cstdio>
#include <string>
#include <vector>

#include "toricvsit/stratify.hpp"
#include "toricvsit/walls.hpp"

namespace ToricVSIT {

/** One drawable wall curve in chart coordinates.
 *  degree 1: coeffs = (cx, cy, c0) for cx*x + cy*y + c0.
 *  degree 2: coeffs = (cxx, cxy, cyy, cx0, cy0, c00). */
struct PlotCurve {
  int kind = 1;
  int degree = 1;
  QVec coeffs;
};

/** A two-variable picture: affine half-planes cutting the ample region
 *  (inside = strictly positive), the wall curves, and the viewport. */
struct PlotScene {
  std::vector<QVec> region;  // (cx, cy, c0) each, region = all > 0
  std::vector<PlotCurve> curves;
  Rat xmin, xmax, ymin, ymax;
};

/** Scene for a two-dimensional reduced ample cone: the walls live directly in
 *  the two free coordinates and every form is homogeneous, so a fixed square
 *  viewport anchored at the origin shows every chamber. */
inline PlotScene scene_plane(const AmpleCone& ac, const WallAtlas& atlas) {
  if (ac.pic.free_rays.size() != 2)
    throw DimUnsupported("plane scene needs exactly two free coordinates");
  PlotScene sc;
  for (const QVec& n : ac.L_red) sc.region.push_back({n[0], n[1], Rat(0)});
  for (const Wall& w : atlas.type_one)
    sc.curves.push_back(PlotCurve{1, 1, {w.poly[0], w.poly[1], Rat(0)}});
  for (const Wall& w : atlas.type_two)
    sc.curves.push_back(PlotCurve{
        2, 2, {w.poly[0], w.poly[1], w.poly[2], Rat(0), Rat(0), Rat(0)}});
  sc.xmin = sc.ymin = Rat(0);
  sc.xmax = sc.ymax = Rat(8);
  return sc;
}

/** Scene for a three-dimensional reduced ample cone cut by the affine plane
 *  f·a = c: the chart keeps two free coordinates and substitutes the third,
 *  turning each homogeneous wall into an affine line or conic.  The plane
 *  must cross every extremal nef ray at positive height so that the sliced
 *  region is a bounded polygon. */
inline PlotScene scene_slice(const AmpleCone& ac, const WallAtlas& atlas,
                             const SliceChart& chart) {
  if (ac.pic.free_rays.size() != 3)
    throw DimUnsupported("slice scene needs exactly three free coordinates");
  const QVec& f = chart.f;
  int pe = chart.elim, px = chart.x, py = chart.y;
  // substitution a = S (x, y, 1): rows over the three free positions
  QMat s(3, QVec(3, Rat(0)));
  s[px][0] = 1;
  s[py][1] = 1;
  s[pe][0] = -f[px] / f[pe];
  s[pe][1] = -f[py] / f[pe];
  s[pe][2] = chart.c / f[pe];
  auto sub_linear = [&](const QVec& w) {
    QVec out(3, Rat(0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[j] += w[i] * s[i][j];
    return out;
  };
  auto sub_quadratic = [&](const QVec& q) {
    QMat m(3, QVec(3, Rat(0)));
    std::size_t t = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        m[i][j] = i == j ? q[t] : q[t] / 2;
        m[j][i] = m[i][j];
        ++t;
      }
    QMat n(3, QVec(3, Rat(0)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int u = 0; u < 3; ++u)
          for (int v = 0; v < 3; ++v)
            n[i][j] += s[u][i] * m[u][v] * s[v][j];
    return QVec{n[0][0], n[0][1] * 2, n[1][1], n[0][2] * 2, n[1][2] * 2,
                n[2][2]};
  };
  PlotScene sc;
  for (const QVec& nrm : ac.L_red) sc.region.push_back(sub_linear(nrm));
  for (const Wall& w : atlas.type_one)
    sc.curves.push_back(PlotCurve{1, 1, sub_linear(w.poly)});
  for (const Wall& w : atlas.type_two)
    sc.curves.push_back(PlotCurve{2, 2, sub_quadratic(w.poly)});
  // viewport: bounding box of the sliced nef polygon, padded by a tenth
  bool first = true;
  Rat xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const QVec& r : ac.nef.rays()) {
    Rat h = dot(f, r);
    if (h <= 0)
      throw NonProjective("slice plane does not bound the ample region");
    Rat x = chart.c / h * r[px];
    Rat y = chart.c / h * r[py];
    if (first || x < xmin) xmin = x;
    if (first || x > xmax) xmax = x;
    if (first || y < ymin) ymin = y;
    if (first || y > ymax) ymax = y;
    first = false;
  }
  Rat padx = (xmax - xmin) / 10, pady = (ymax - ymin) / 10;
  if (padx == 0) padx = 1;
  if (pady == 0) pady = 1;
  sc.xmin = xmin - padx;
  sc.xmax = xmax + padx;
  sc.ymin = ymin - pady;
  sc.ymax = ymax + pady;
  return sc;
}

namespace detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

/** Exact half-plane clipping of a convex polygon (Sutherland-Hodgman). */
inline std::vector<std::pair<Rat, Rat>> clip_halfplane(
    const std::vector<std::pair<Rat, Rat>>& poly, const QVec& h) {
  std::vector<std::pair<Rat, Rat>> out;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    Rat vp = h[0] * p.first + h[1] * p.second + h[2];
    Rat vq = h[0] * q.first + h[1] * q.second + h[2];
    bool inp = vp >= 0, inq = vq >= 0;
    if (inp) out.push_back(p);
    if (inp != inq) {
      Rat t = vp / (vp - vq);
      out.push_back({p.first + t * (q.first - p.first),
                     p.second + t * (q.second - p.second)});
    }
  }
  return out;
}

}  // namespace detail

/** Render a scene to a standalone SVG string: shaded ample region (computed
 *  by exact half-plane clipping of the viewport), type-one walls in solid
 *  strokes, type-two walls dashed, both clipped to the region.  Curves are
 *  traced by marching squares on a resolution² grid whose corner signs come
 *  from exact forward-differenced evaluation; coordinates degrade to floats
 *  only when written.  Output bytes are stable for a fixed scene and
 *  resolution. */
inline std::string render_scene(const PlotScene& sc, int resolution = 512) {
  if (resolution < 16) throw DimUnsupported("resolution below 16");
  const double W = 640.0, H = 640.0;
  double fx0 = static_cast<double>(sc.xmin), fx1 = static_cast<double>(sc.xmax);
  double fy0 = static_cast<double>(sc.ymin), fy1 = static_cast<double>(sc.ymax);
  auto tox = [&](double x) { return (x - fx0) / (fx1 - fx0) * W; };
  auto toy = [&](double y) { return H - (y - fy0) / (fy1 - fy0) * H; };
  // region polygon: viewport box clipped by every inequality
  std::vector<std::pair<Rat, Rat>> poly{{sc.xmin, sc.ymin},
                                        {sc.xmax, sc.ymin},
                                        {sc.xmax, sc.ymax},
                                        {sc.xmin, sc.ymax}};
  for (const QVec& h : sc.region) {
    poly = detail::clip_halfplane(poly, h);
    if (poly.empty()) break;
  }
  std::string region_path;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    region_path += (i ? "L" : "M");
    region_path += detail::fmt2(tox(static_cast<double>(poly[i].first)));
    region_path += " ";
    region_path += detail::fmt2(toy(static_cast<double>(poly[i].second)));
  }
  if (!poly.empty()) region_path += "Z";
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
         "height=\"640\" viewBox=\"0 0 640 640\">\n";
  svg += "<style>.region{fill:#dbeafe;stroke:#1e3a8a;stroke-width:1}"
         ".t1{stroke:#d97706;stroke-width:2;fill:none}"
         ".t2{stroke:#dc2626;stroke-width:1.5;fill:none;"
         "stroke-dasharray:6 3}</style>\n";
  svg += "<rect width=\"640\" height=\"640\" fill=\"#ffffff\"/>\n";
  svg += "<defs><clipPath id=\"rg\"><path d=\"" + region_path +
         "\"/></clipPath></defs>\n";
  svg += "<path class=\"region\" d=\"" + region_path + "\"/>\n";
  svg += "<g clip-path=\"url(#rg)\">\n";
  int r = resolution;
  Rat hx = (sc.xmax - sc.xmin) / r;
  Rat hy = (sc.ymax - sc.ymin) / r;
  std::vector<double> xs(r + 1), ys(r + 1);
  for (int i = 0; i <= r; ++i) {
    xs[i] = static_cast<double>(sc.xmin + hx * i);
    ys[i] = static_cast<double>(sc.ymin + hy * i);
  }
  for (const PlotCurve& c : sc.curves) {
    // exact corner values, row by row with forward differences in x
    std::vector<std::vector<Rat>> val(r + 1, std::vector<Rat>(r + 1));
    for (int j = 0; j <= r; ++j) {
      Rat y = sc.ymin + hy * j;
      Rat v, d1, d2;
      if (c.degree == 1) {
        v = c.coeffs[0] * sc.xmin + c.coeffs[1] * y + c.coeffs[2];
        d1 = c.coeffs[0] * hx;
        d2 = 0;
      } else {
        const Rat &A = c.coeffs[0], &B = c.coeffs[1], &C = c.coeffs[2];
        const Rat &D = c.coeffs[3], &E = c.coeffs[4], &F = c.coeffs[5];
        Rat lin = B * y + D;
        v = A * sc.xmin * sc.xmin + lin * sc.xmin + C * y * y + E * y + F;
        d1 = A * (2 * sc.xmin * hx + hx * hx) + lin * hx;
        d2 = 2 * A * hx * hx;
      }
      for (int i = 0; i <= r; ++i) {
        val[j][i] = v;
        v += d1;
        d1 += d2;
      }
    }
    std::string path;
    auto edge_point = [&](int i1, int j1, int i2, int j2, double& x,
                          double& y) {
      double v1 = static_cast<double>(val[j1][i1]);
      double v2 = static_cast<double>(val[j2][i2]);
      double t = v1 == v2 ? 0.5 : v1 / (v1 - v2);
      x = xs[i1] + t * (xs[i2] - xs[i1]);
      y = ys[j1] + t * (ys[j2] - ys[j1]);
    };
    for (int j = 0; j < r; ++j) {
      for (int i = 0; i < r; ++i) {
        int code = 0;
        if (val[j][i] >= 0) code |= 1;        // bottom-left
        if (val[j][i + 1] >= 0) code |= 2;    // bottom-right
        if (val[j + 1][i + 1] >= 0) code |= 4;  // top-right
        if (val[j + 1][i] >= 0) code |= 8;    // top-left
        if (code == 0 || code == 15) continue;
        double bx, by, rx, ry, txx, txy, lx, ly;
        bool hasb = ((code & 1) != 0) != ((code & 2) != 0);
        bool hasr = ((code & 2) != 0) != ((code & 4) != 0);
        bool hast = ((code & 4) != 0) != ((code & 8) != 0);
        bool hasl = ((code & 8) != 0) != ((code & 1) != 0);
        if (hasb) edge_point(i, j, i + 1, j, bx, by);
        if (hasr) edge_point(i + 1, j, i + 1, j + 1, rx, ry);
        if (hast) edge_point(i + 1, j + 1, i, j + 1, txx, txy);
        if (hasl) edge_point(i, j + 1, i, j, lx, ly);
        auto seg = [&](double x1, double y1, double x2, double y2) {
          path += "M" + detail::fmt2(tox(x1)) + " " + detail::fmt2(toy(y1)) +
                  "L" + detail::fmt2(tox(x2)) + " " + detail::fmt2(toy(y2));
        };
        if (code == 5 || code == 10) {
          // saddle: orient by the cell-center sample
          double center =
              (static_cast<double>(val[j][i]) +
               static_cast<double>(val[j][i + 1]) +
               static_cast<double>(val[j + 1][i]) +
               static_cast<double>(val[j + 1][i + 1])) /
              4.0;
          bool centerpos = center >= 0;
          if ((code == 5) == centerpos) {
            seg(bx, by, rx, ry);
            seg(txx, txy, lx, ly);
          } else {
            seg(lx, ly, bx, by);
            seg(rx, ry, txx, txy);
          }
        } else {
          double px[2], py[2];
          int np = 0;
          if (hasb) { px[np] = bx; py[np] = by; ++np; }
          if (hasr && np < 2) { px[np] = rx; py[np] = ry; ++np; }
          if (hast && np < 2) { px[np] = txx; py[np] = txy; ++np; }
          if (hasl && np < 2) { px[np] = lx; py[np] = ly; ++np; }
          if (np == 2) seg(px[0], py[0], px[1], py[1]);
        }
      }
    }
    if (!path.empty()) {
      svg += "<path class=\"";
      svg += (c.kind == 1 ? "t1" : "t2");
      svg += "\" d=\"" + path + "\"/>\n";
    }
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

/** Graphviz serialization of a stratification poset (Hasse edges downward). */
inline std::string poset_dot(const Poset& p) {
  std::string out = "digraph stratification {\n  rankdir=TB;\n";
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" + p.nodes[i].name +
           "\"];\n";
  }
  for (const auto& [hi, lo] : p.covers)
    out += "  n" + std::to_string(hi) + " -> n" + std::to_string(lo) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace ToricVSIT

#endif  // TORICVSIT_RENDER_HPP
