#include "tfchan/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tfchan/special.hpp"

namespace tfchan::report {

const char* kCsvHeader =
    "run_id,seed,U_size,u,mu1,mu2,p,q,case,alpha,ratio,certificate,uniform_bound,"
    "gl_bound,kozek_bound,notes";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_row(const mc::McRecord& r, double p, double q, const char* case_name,
                    double alpha) {
  std::ostringstream os;
  os << r.run_id << ',' << r.seed << ',' << format_double(r.u_size) << ','
     << format_double(r.u) << ',' << format_double(r.mu1) << ','
     << format_double(r.mu2) << ',' << format_double(p) << ',' << format_double(q)
     << ',' << case_name << ',' << format_double(alpha) << ','
     << format_double(r.ratio) << ',' << format_double(r.certificate) << ','
     << format_double(r.uniform_bound) << ',' << format_double(r.gl_bound) << ','
     << format_double(r.kozek_bound) << ',' << r.notes;
  return os.str();
}

std::string csv_document(const std::vector<mc::McRecord>& records,
                         const mc::McConfig& cfg) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : records)
    os << csv_row(r, cfg.p, cfg.q, cfg.tag.name(), cfg.alpha.alpha) << '\n';
  return os.str();
}

std::string bound_report_text(const bounds::BoundReport& report) {
  std::ostringstream os;
  for (const auto& row : report) {
    os << row.name << ": ";
    if (row.applicable)
      os << format_double(row.value);
    else
      os << "n/a";
    if (!row.note.empty()) os << "  (" << row.note << ")";
    os << '\n';
  }
  return os.str();
}

namespace {

// map a value to plot coordinates on a log scale
double log_map(double v, double lo, double hi, double out_lo, double out_hi) {
  const double t = (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
  return out_lo + t * (out_hi - out_lo);
}

}  // namespace

std::string svg_scatter(const std::vector<mc::McRecord>& records,
                        const mc::McConfig& cfg) {
  const double W = 760, H = 520;
  const double mL = 70, mR = 20, mT = 30, mB = 50;
  double x_lo = 1e300, x_hi = 0, y_lo = 1e300, y_hi = 0;
  for (const auto& r : records) {
    if (r.failed) continue;
    x_lo = std::min(x_lo, r.u_size);
    x_hi = std::max(x_hi, r.u_size);
    for (double v : {r.ratio, r.uniform_bound, r.gl_bound}) {
      if (!std::isfinite(v) || v <= 0) continue;
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (!(x_lo < x_hi)) {
    x_lo = cfg.u_size_lo;
    x_hi = cfg.u_size_hi;
  }
  if (!(y_lo < y_hi)) {
    y_lo = 1e-6;
    y_hi = 1.0;
  }
  y_lo *= 0.5;
  y_hi *= 2.0;

  auto px = [&](double u) { return log_map(u, x_lo, x_hi, mL, W - mR); };
  auto py = [&](double v) { return log_map(v, y_lo, y_hi, H - mB, mT); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
     << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
     << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << mL << "\" y=\"" << mT << "\" width=\"" << (W - mL - mR)
     << "\" height=\"" << (H - mT - mB)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<text x=\"" << (W / 2) << "\" y=\"" << (H - 12)
     << "\" text-anchor=\"middle\" font-size=\"14\">|U| (log)</text>\n";
  os << "<text x=\"18\" y=\"" << (H / 2)
     << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
     << (H / 2) << ")\">E_p/||Sigma||_q (log)</text>\n";

  // bound curves sampled across the x range
  auto curve = [&](const char* color, auto&& fn) {
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (int i = 0; i <= 128; ++i) {
      const double u =
          std::pow(10.0, std::log10(x_lo) + (std::log10(x_hi) - std::log10(x_lo)) * i / 128.0);
      const double v = fn(u);
      if (!std::isfinite(v) || v <= 0) continue;
      os << px(u) << ',' << py(std::clamp(v, y_lo, y_hi)) << ' ';
    }
    os << "\"/>\n";
  };
  const int k = cfg.tag.k();
  const double qp = channel::dual_index(cfg.q);
  const double pref = std::pow(32.0, (cfg.p - 2.0) / (4.0 * cfg.p));
  curve("#d62728", [&](double u) {
    return pref * std::pow(k, 2.0 / cfg.p) * std::pow(u, 1.0 / qp);
  });
  curve("#1f77b4", [&](double u) {
    const double L = specfun::laguerre_square_mass(2.0 * u / k);
    return pref * k * std::pow(k * u * (1.0 - L), 1.0 / std::max(qp, cfg.p));
  });

  for (const auto& r : records) {
    if (r.failed || !(r.ratio > 0)) continue;
    os << "<circle cx=\"" << px(r.u_size) << "\" cy=\"" << py(r.ratio)
       << "\" r=\"2\" fill=\"#2ca02c\" fill-opacity=\"0.6\"/>\n";
  }

  os << "<text x=\"" << (mL + 10) << "\" y=\"" << (mT + 18)
     << "\" font-size=\"12\" fill=\"#d62728\">uniform bound</text>\n";
  os << "<text x=\"" << (mL + 10) << "\" y=\"" << (mT + 34)
     << "\" font-size=\"12\" fill=\"#1f77b4\">Gauss-Laguerre bound</text>\n";
  os << "<text x=\"" << (mL + 10) << "\" y=\"" << (mT + 50)
     << "\" font-size=\"12\" fill=\"#2ca02c\">MC ratio</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace tfchan::report
