#include "eit/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "eit/errors.hpp"

namespace eit {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_snapshot_csv(std::ostream& os, const FieldSet& st, double t,
                        const std::string& scenario_hash) {
  const Grid& g = st.grid();
  os << "# eit-snapshot v1\n";
  os << "# scenario_hash=" << scenario_hash << "\n";
  os << "# t=" << format_g17(t) << "\n";
  os << "# grid: " << to_string(g) << "\n";
  os << "x";
  if (g.dim == 2) os << ",y";
  os << ",rho,s";
  for (int c = 0; c < g.dim; ++c) os << ",u" << "xy"[c];
  if (g.dim == 1)
    os << ",sigma_xx";
  else
    os << ",sigma_xx,sigma_xy,sigma_yy";
  for (int c = 0; c < g.dim; ++c) os << ",q" << "xy"[c];
  for (const auto& qk : st.q_higher)
    for (int c = 0; c < qk.ncomp(); ++c) os << ",q" << qk.order << "_" << c;
  os << ",gamma,varsigma\n";
  for (int iy = 0; iy < g.n[1]; ++iy)
    for (int ix = 0; ix < g.n[0]; ++ix) {
      const int i = g.idx(ix, iy);
      os << format_g17(g.x(ix));
      if (g.dim == 2) os << "," << format_g17(g.y(iy));
      os << "," << format_g17(st.rho[i]) << "," << format_g17(st.s[i]);
      for (int c = 0; c < g.dim; ++c) os << "," << format_g17(st.u(c, i));
      for (int c = 0; c < st.sigma.ncomp(); ++c) os << "," << format_g17(st.sigma(c, i));
      for (int c = 0; c < g.dim; ++c) os << "," << format_g17(st.q(c, i));
      for (const auto& qk : st.q_higher)
        for (int c = 0; c < qk.ncomp(); ++c) os << "," << format_g17(qk(c, i));
      os << "," << format_g17(st.gamma_td[i]) << "," << format_g17(st.varsigma[i]) << "\n";
    }
}

void write_record_csv(std::ostream& os, const RunRecord& rec) {
  os << "# eit-runrecord v1\n";
  os << "# scenario_hash=" << rec.scenario_hash << "\n";
  for (const std::string& h : rec.header) os << "# " << h << "\n";
  os << "# dt=" << format_g17(rec.dt) << " steps=" << rec.steps
     << (rec.blew_up ? " PARTIAL(blow-up)" : "") << "\n";
  os << "step,t,mass,energy,entropy,varsigma,boundary_energy_flux,production_integral,"
        "production_min";
  const size_t nprobe = rec.samples.empty() ? 0 : rec.samples.front().probes.size();
  for (size_t p = 0; p < nprobe; ++p) os << ",probe" << p;
  os << "\n";
  for (const RunSample& s : rec.samples) {
    os << s.step << "," << format_g17(s.t) << "," << format_g17(s.mass) << ","
       << format_g17(s.energy) << "," << format_g17(s.entropy) << "," << format_g17(s.varsigma)
       << "," << format_g17(s.boundary_energy_flux) << "," << format_g17(s.production_integral)
       << "," << format_g17(s.production_min);
    for (double p : s.probes) os << "," << format_g17(p);
    os << "\n";
  }
}

void write_snapshot_file(const std::string& path, const FieldSet& st, double t,
                         const std::string& scenario_hash) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  write_snapshot_csv(f, st, t, scenario_hash);
}

void write_record_file(const std::string& path, const RunRecord& rec) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  write_record_csv(f, rec);
}

}  // namespace eit
