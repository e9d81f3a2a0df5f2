#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "qwgo/experiments.hpp"

namespace qwgo::experiments {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& out, const optimizer::RunTrace& trace) {
  out << "iteration,step_kind,rotations,cum_evals,sample_index,sample_x,sample_f,threshold_c,best_x,best_f,"
         "success\n";
  for (const optimizer::StepRecord& r : trace.steps) {
    out << r.iteration << ',' << optimizer::to_string(r.kind) << ',' << r.rotations << ',' << r.cum_evals << ','
        << r.sample_index << ',' << format_double(r.sample_x) << ',' << format_double(r.sample_f) << ','
        << format_double(r.threshold) << ',' << format_double(r.best_x) << ',' << format_double(r.best_f) << ','
        << (r.success ? 1 : 0) << '\n';
  }
}

void write_curves_csv(std::ostream& out, std::span<const SuccessCurve> curves) {
  out << "algorithm,objective,r0,axis,axis_value,success_prob,stderr,runs\n";
  for (const SuccessCurve& c : curves) {
    const std::string r0 = c.r0 ? std::to_string(*c.r0) : "";
    for (const CurvePoint& p : c.points) {
      out << c.algorithm << ',' << c.objective << ',' << r0 << ',' << to_string(c.axis) << ','
          << format_double(p.axis_value) << ',' << format_double(p.success_prob) << ','
          << format_double(p.std_error) << ',' << c.runs << '\n';
    }
  }
}

void write_pdf_csv(std::ostream& out, const GridDomain& domain, std::span<const AveragePdf> pdfs) {
  out << "iteration,state_index,x,mean_probability\n";
  for (const AveragePdf& pdf : pdfs)
    for (std::size_t j = 0; j < pdf.mean_probability.size(); ++j)
      out << pdf.iteration << ',' << j << ',' << format_double(domain.coordinate(j)) << ','
          << format_double(pdf.mean_probability[j]) << '\n';
}

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 50.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Frame {
  double x_min, x_max, y_min, y_max;
  double sx(double x) const {
    return kMargin + (x_max > x_min ? (x - x_min) / (x_max - x_min) : 0.0) * (kWidth - 2 * kMargin);
  }
  double sy(double y) const {
    return kHeight - kMargin - (y_max > y_min ? (y - y_min) / (y_max - y_min) : 0.0) * (kHeight - 2 * kMargin);
  }
};

void open_svg(std::ostream& out, const Frame& f, const std::string& x_label, const std::string& y_label) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << f.sy(f.y_min) << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
      << f.sy(f.y_min) << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
      << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">" << x_label
      << " [" << format_double(f.x_min) << ", " << format_double(f.x_max) << "]</text>\n"
      << "<text x=\"14\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 14 " << kHeight / 2
      << ")\" text-anchor=\"middle\">" << y_label << " [" << format_double(f.y_min) << ", "
      << format_double(f.y_max) << "]</text>\n";
}

template <class Xs, class Ys>
void polyline(std::ostream& out, const Frame& f, const Xs& xs, const Ys& ys, std::size_t n, const char* color) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  char buf[64];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", f.sx(xs(i)), f.sy(ys(i)));
    out << buf;
  }
  out << "\"/>\n";
}

void legend(std::ostream& out, std::size_t slot, const std::string& label, const char* color) {
  const double y = kMargin + 16.0 * static_cast<double>(slot);
  out << "<rect x=\"" << kWidth - kMargin - 190 << "\" y=\"" << y - 9 << "\" width=\"10\" height=\"10\" fill=\""
      << color << "\"/>\n<text x=\"" << kWidth - kMargin - 175 << "\" y=\"" << y << "\">" << label << "</text>\n";
}

}  // namespace

void write_curves_svg(std::ostream& out, std::span<const SuccessCurve> curves) {
  Frame f{0.0, 1.0, 0.0, 1.0};
  bool first = true;
  for (const SuccessCurve& c : curves)
    for (const CurvePoint& p : c.points) {
      f.x_min = first ? p.axis_value : std::min(f.x_min, p.axis_value);
      f.x_max = first ? p.axis_value : std::max(f.x_max, p.axis_value);
      first = false;
    }
  const std::string x_label = curves.empty() ? "axis" : std::string(to_string(curves.front().axis));
  open_svg(out, f, x_label, "success probability");
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const SuccessCurve& c = curves[k];
    const char* color = kPalette[k % std::size(kPalette)];
    polyline(
        out, f, [&](std::size_t i) { return c.points[i].axis_value; },
        [&](std::size_t i) { return c.points[i].success_prob; }, c.points.size(), color);
    legend(out, k, c.algorithm + (c.r0 ? " R0=" + std::to_string(*c.r0) : ""), color);
  }
  out << "</svg>\n";
}

void write_pdf_svg(std::ostream& out, const GridDomain& domain, std::span<const AveragePdf> pdfs) {
  double y_max = 0.0;
  for (const AveragePdf& p : pdfs)
    for (double v : p.mean_probability) y_max = std::max(y_max, v);
  const Frame f{domain.x_lo(), domain.coordinate(domain.size() - 1), 0.0, y_max > 0.0 ? y_max : 1.0};
  open_svg(out, f, "x", "mean probability");
  for (std::size_t k = 0; k < pdfs.size(); ++k) {
    const AveragePdf& p = pdfs[k];
    const char* color = kPalette[k % std::size(kPalette)];
    polyline(
        out, f, [&](std::size_t j) { return domain.coordinate(j); },
        [&](std::size_t j) { return p.mean_probability[j]; }, p.mean_probability.size(), color);
    legend(out, k, "iteration " + std::to_string(p.iteration), color);
  }
  out << "</svg>\n";
}

}  // namespace qwgo::experiments
