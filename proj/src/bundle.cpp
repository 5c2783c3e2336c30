#include "ddcsim/bundle.hpp"

#include <fmt/format.h>

#include <fstream>
#include <system_error>

#include <json.hpp>

#include "ddcsim/config.hpp"
#include "ddcsim/version.hpp"

namespace ddcsim {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.parent_path() / (".tmp." + path.filename().string());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace {

// Streamed rather than built in memory: a full-length run is on the order of
// two million rows.
void write_timeseries_atomic(const fs::path& path, const RunOutput& out) {
  const fs::path tmp = path.parent_path() / (".tmp." + path.filename().string());
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + tmp.string());
    file << "t,omega,P,Pe,Pm,Ps,pending_consuming,pending_saving\n";
    fmt::memory_buffer buf;
    for (std::size_t i = 0; i < out.samples(); ++i) {
      buf.clear();
      fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{},{}\n",
                     out.time_at(i), out.omega[i], out.load_at(i),
                     out.electric_load_at(i), out.p_mech[i], out.p_reserve[i],
                     out.pending_consuming[i], out.pending_saving[i]);
      file.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    file.flush();
    if (!file) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string ccdf_csv(const RunOutput& out, std::size_t max_points) {
  const CcdfCurve curve = ccdf(out.abs_freq_deviations());
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "delta_omega,R\n");
  for (const auto& [delta, r] : decimate_log_rank(curve, max_points))
    fmt::format_to(std::back_inserter(buf), "{},{}\n", delta, r);
  return fmt::to_string(buf);
}

json summary_json(const RunSummary& s) {
  json j;
  j["sigma2_omega"] = s.sigma2_omega;
  j["mean_pending_per_device"] = s.mean_pending_per_device;
  j["mean_pending_per_ddc_device"] =
      s.mean_pending_per_ddc_device
          ? json(*s.mean_pending_per_ddc_device)
          : json(nullptr);
  j["mean_pending_per_ceddc_device"] =
      s.mean_pending_per_ceddc_device
          ? json(*s.mean_pending_per_ceddc_device)
          : json(nullptr);
  j["max_abs_delta_omega"] = s.max_abs_delta_omega;
  j["R"] = {{"at_epsilon", s.r_at_epsilon},
            {"at_epsilon1", s.r_at_epsilon1},
            {"at_0.1", s.r_at_0p1}};
  return j;
}

std::string plot_script(const BundleOptions& options) {
  std::string script =
      "# gnuplot script; run from this directory\n"
      "set datafile separator ','\n"
      "set terminal pngcairo size 1200,800\n";
  if (options.include_timeseries) {
    script +=
        "set output 'frequency.png'\n"
        "set xlabel 't [s]'\nset ylabel 'omega [Hz]'\n"
        "plot 'timeseries.csv' using 1:2 every ::1 with lines title 'omega'\n"
        "set output 'load.png'\n"
        "set ylabel 'P_e/P0'\n"
        "plot 'timeseries.csv' using 1:4 every ::1 with lines title 'Pe'\n"
        "set output 'pending.png'\n"
        "set ylabel 'pending tasks'\n"
        "plot 'timeseries.csv' using 1:7 every ::1 with lines title 'consuming', \\\n"
        "     'timeseries.csv' using 1:8 every ::1 with lines title 'saving'\n";
  }
  script +=
      "set output 'ccdf.png'\n"
      "set logscale y\nset xlabel 'delta omega [Hz]'\nset ylabel 'R'\n"
      "plot 'ccdf.csv' using 1:2 every ::1 with lines title 'R(delta omega)'\n";
  return script;
}

}  // namespace

std::string summary_to_json(const RunSummary& summary, int indent) {
  return summary_json(summary).dump(indent);
}

OutputBundle write_bundle(const RunOutput& output, const fs::path& dir,
                          const BundleOptions& options) {
  fs::create_directories(dir);
  OutputBundle bundle;
  bundle.dir = dir;
  bundle.stats = summarize(output);

  if (options.include_timeseries) {
    bundle.timeseries = dir / "timeseries.csv";
    write_file_atomic(bundle.timeseries, timeseries_csv(output));
  }
  bundle.ccdf_points = dir / "ccdf.csv";
  write_file_atomic(bundle.ccdf_points, ccdf_csv(output, options.ccdf_max_points));

  bundle.summary = dir / "summary.json";
  write_file_atomic(bundle.summary, summary_to_json(bundle.stats) + "\n");

  json manifest;
  manifest["tool"] = "ddcsim";
  manifest["version"] = kVersion;
  manifest["seed"] = output.config.seed;
  manifest["config"] = json::parse(config_to_json(output.config));
  json files;
  if (options.include_timeseries) files["timeseries"] = "timeseries.csv";
  files["ccdf"] = "ccdf.csv";
  files["summary"] = "summary.json";
  if (options.include_plot_script) files["plot"] = "plot.gp";
  manifest["files"] = files;
  bundle.manifest = dir / "manifest.json";
  write_file_atomic(bundle.manifest, manifest.dump(2) + "\n");

  if (options.include_plot_script) {
    bundle.plot_script = dir / "plot.gp";
    write_file_atomic(bundle.plot_script, plot_script(options));
  }
  return bundle;
}

}  // namespace ddcsim
