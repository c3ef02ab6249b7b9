#include "stochdg/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace stochdg {

std::string format_full(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_sig4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

void write_header(std::ofstream& out, const OutputHeader& header) {
  out << "# stochdg " << tool_version << "\n";
  out << "# config_hash=" << hex64(header.config_hash) << "\n";
  out << "# seed=" << header.seed << "\n";
  if (header.timestamp) out << "# timestamp=" << utc_timestamp() << "\n";
  std::istringstream cfg(header.effective_config);
  std::string line;
  while (std::getline(cfg, line))
    if (!line.empty()) out << "# cfg:" << line << "\n";
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out.good()) throw IoError("write failed: " + path);
}

bool report_empty(const ErrorReport& report) {
  for (const ResolutionResult& rr : report.resolutions)
    if (rr.samples_used > 0) return false;
  return true;
}

using Formatter = std::string (*)(double);

std::string eoc_cell(double v, Formatter fmt) {
  return std::isfinite(v) ? fmt(v) : std::string("-");
}

void write_table(const ErrorReport& report, const OutputHeader& header, const std::string& path,
                 Formatter fmt) {
  std::ofstream out = open_for_write(path);
  write_header(out, header);
  out << "# reference_elements=" << report.reference_elements << "\n";
  out << "# reference_stopped=" << report.reference_stopped << "\n";
  out << "elements,e1,eoc_e1,e2,eoc_e2,e1_stderr,e2_stderr,samples_used,samples_stopped\n";
  if (report_empty(report)) {
    finish(out, path);
    return;
  }
  for (std::size_t i = 0; i < report.resolutions.size(); ++i) {
    const ResolutionResult& rr = report.resolutions[i];
    std::string eoc1 = "-", eoc2 = "-";
    if (i > 0) {
      eoc1 = eoc_cell(report.eoc_rows[i - 1].eoc_e1, fmt);
      eoc2 = eoc_cell(report.eoc_rows[i - 1].eoc_e2, fmt);
    }
    out << rr.elements << ',' << fmt(rr.e1_mean) << ',' << eoc1 << ',' << fmt(rr.e2_mean) << ','
        << eoc2 << ',' << fmt(rr.e1_stderr) << ',' << fmt(rr.e2_stderr) << ',' << rr.samples_used
        << ',' << rr.samples_stopped << "\n";
  }
  out << "average,-," << eoc_cell(report.avg_eoc_e1, fmt) << ",-,"
      << eoc_cell(report.avg_eoc_e2, fmt) << ",-,-,-,-\n";
  finish(out, path);
}

}  // namespace

std::string table_companion_path(const std::string& path) {
  std::size_t slash = path.find_last_of('/');
  std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + "_full";
  return path.substr(0, dot) + "_full" + path.substr(dot);
}

void emit_table(const ErrorReport& report, const OutputHeader& header, const std::string& path) {
  write_table(report, header, path, &format_sig4);
  write_table(report, header, table_companion_path(path), &format_full);
}

void emit_per_sample(const ErrorReport& report, const OutputHeader& header,
                     const std::string& path) {
  std::ofstream out = open_for_write(path);
  write_header(out, header);
  out << "sample,elements,e1,e2,coarse_stopped,reference_stopped,dw_hash\n";
  for (const ResolutionResult& rr : report.resolutions) {
    for (const ErrorSample& s : rr.samples) {
      out << s.sample << ',' << rr.elements << ',';
      if (s.used())
        out << format_full(s.e1) << ',' << format_full(s.e2);
      else
        out << ',';
      out << ',' << (s.coarse_stopped ? 1 : 0) << ',' << (s.reference_stopped ? 1 : 0) << ','
          << hex64(s.dw_hash) << "\n";
    }
  }
  finish(out, path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell_double(const std::string& s, const std::string& path) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw IoError("malformed number '" + s + "' in " + path);
  return v;
}

std::uint64_t parse_cell_u64(const std::string& s, const std::string& path, int base = 10) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (base == 16 && s.starts_with("0x")) first += 2;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(first, last, v, base);
  if (ec != std::errc{} || ptr != last)
    throw IoError("malformed integer '" + s + "' in " + path);
  return v;
}

}  // namespace

ErrorReport read_per_sample(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  ErrorReport report;
  std::string line;
  bool saw_columns = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string degree_key = "# cfg:degree=";
      const std::string reference_key = "# cfg:reference=";
      if (line.starts_with(degree_key))
        report.degree = static_cast<int>(parse_cell_u64(line.substr(degree_key.size()), path));
      else if (line.starts_with(reference_key))
        report.reference_elements =
            static_cast<int>(parse_cell_u64(line.substr(reference_key.size()), path));
      continue;
    }
    if (!saw_columns) {  // column header line
      saw_columns = true;
      continue;
    }
    auto cells = split_csv_line(line);
    if (cells.size() != 7) throw IoError("expected 7 columns, got " +
                                         std::to_string(cells.size()) + " in " + path);
    ErrorSample s;
    s.sample = parse_cell_u64(cells[0], path);
    int elements = static_cast<int>(parse_cell_u64(cells[1], path));
    s.coarse_stopped = parse_cell_u64(cells[4], path) != 0;
    s.reference_stopped = parse_cell_u64(cells[5], path) != 0;
    if (s.used()) {
      s.e1 = parse_cell_double(cells[2], path);
      s.e2 = parse_cell_double(cells[3], path);
    }
    s.dw_hash = parse_cell_u64(cells[6], path, 16);
    ResolutionResult* rr = nullptr;
    for (ResolutionResult& cand : report.resolutions)
      if (cand.elements == elements) rr = &cand;
    if (!rr) {
      report.resolutions.push_back({});
      rr = &report.resolutions.back();
      rr->elements = elements;
    }
    rr->samples.push_back(s);
  }
  if (!saw_columns) throw IoError("no column header in " + path);
  return report;
}

void emit_snapshot(const DiscreteField& field, const OperatorSet& ops, const GasModel& gas,
                   double time, const OutputHeader& header, const std::string& path) {
  std::ofstream out = open_for_write(path);
  write_header(out, header);
  out << "# time=" << format_full(time) << "\n";
  const int dim = field.mesh.dim;
  const int npe = field.nodes_per_elem();
  out << (dim == 1 ? "x,rho,m1,energy,pressure\n" : "x,y,rho,m1,m2,energy,pressure\n");
  for (int e = 0; e < field.mesh.n_elements(); ++e) {
    for (int q = 0; q < npe; ++q) {
      auto pos = node_position(field.mesh, ops, e, q);
      const double* u = field.node(e, q);
      double press;
      if (dim == 1) {
        press = pressure(Cons<1>{u[0], {u[1]}, u[2]}, gas);
        out << format_full(pos[0]) << ',' << format_full(u[0]) << ',' << format_full(u[1]) << ','
            << format_full(u[2]) << ',' << format_full(press) << "\n";
      } else {
        press = pressure(Cons<2>{u[0], {u[1], u[2]}, u[3]}, gas);
        out << format_full(pos[0]) << ',' << format_full(pos[1]) << ',' << format_full(u[0])
            << ',' << format_full(u[1]) << ',' << format_full(u[2]) << ',' << format_full(u[3])
            << ',' << format_full(press) << "\n";
      }
    }
  }
  if (dim == 2) {
    const int n = field.mesh.elements_per_axis;
    const int np = ops.degree + 1;
    out << "# grid\n" << n << ',' << n << "\n";
    for (int ey = 0; ey < n; ++ey) {
      for (int ex = 0; ex < n; ++ex) {
        const int e = ey * n + ex;
        double mean = 0.0;
        for (int j = 0; j < np; ++j)
          for (int i = 0; i < np; ++i)
            mean += ops.weights[i] * ops.weights[j] * field.node(e, j * np + i)[0];
        mean *= 0.25;  // reference-square measure is 4
        if (ex) out << ',';
        out << format_full(mean);
      }
      out << "\n";
    }
  }
  finish(out, path);
}

void emit_ledger(const BalanceLedger& ledger, int dim, const OutputHeader& header,
                 const std::string& path) {
  std::ofstream out = open_for_write(path);
  write_header(out, header);
  out << "# dw_hash=" << hex64(ledger.dw_hash) << "\n";
  out << (dim == 1 ? "step,time,mass,mom1,energy,dW1\n"
                   : "step,time,mass,mom1,mom2,energy,dW1,dW2\n");
  for (const BalanceRow& row : ledger.rows) {
    out << row.step << ',' << format_full(row.time) << ',' << format_full(row.mass) << ','
        << format_full(row.momentum[0]) << ',';
    if (dim == 2) out << format_full(row.momentum[1]) << ',';
    out << format_full(row.energy) << ',' << format_full(row.dW[0]);
    if (dim == 2) out << ',' << format_full(row.dW[1]);
    out << "\n";
  }
  finish(out, path);
}

}  // namespace stochdg
