/*
 * Copyright 2026 The mrsde Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line surface of the toolkit: dataset synthesis (`degrade`),
// oracle-based restoration demos (`restore-oracle`), the verification suite
// (`verify`), metric reports (`metrics`) and schedule inspection
// (`schedule-dump`).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mrsde/annotate.hpp"
#include "mrsde/config.hpp"
#include "mrsde/metrics.hpp"
#include "mrsde/pipeline.hpp"
#include "mrsde/png_io.hpp"
#include "mrsde/sde.hpp"
#include "mrsde/verify.hpp"

namespace fs = std::filesystem;
using namespace mrsde;

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--seed", seed, "Master seed (overrides config)");
    cmd->add_option("--workers", workers, "Worker threads, 0 = hardware");
  }

  RunConfig load() const {
    RunConfig config = config_path.empty() ? RunConfig{} : RunConfig::from_file(config_path);
    if (seed) {
      config.seed = *seed;
      config.pipeline.seed = *seed;
    }
    if (workers) config.workers = *workers;
    return config;
  }
};

int resolve_workers(const RunConfig& config) {
  if (config.workers > 0) return config.workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

bool has_png_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png";
}

std::vector<fs::path> list_pngs(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw std::runtime_error("not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && has_png_extension(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

// Runs fn(0..count-1) on a pool; per-index work owns its RNG stream, so the
// worker count never changes outputs.
void parallel_for_index(int count, int workers, const std::function<void(int)>& fn) {
  std::atomic<int> next{0};
  auto run = [&]() {
    for (;;) {
      const int idx = next.fetch_add(1);
      if (idx >= count) break;
      fn(idx);
    }
  };
  std::vector<std::thread> threads;
  const int spawn = std::min(workers, count) - 1;
  for (int i = 0; i < spawn; ++i) threads.emplace_back(run);
  run();
  for (std::thread& th : threads) th.join();
}

std::string format_metric(double value) {
  if (std::isinf(value)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

// ------------------------------- degrade --------------------------------

ImageF random_patch(const ImageF& img, int patch, Rng& rng) {
  if (img.height() <= patch && img.width() <= patch) return img;
  const int h = std::min(patch, img.height());
  const int w = std::min(patch, img.width());
  const int y0 = static_cast<int>(rng.uniform_int(0, img.height() - h));
  const int x0 = static_cast<int>(rng.uniform_int(0, img.width() - w));
  ImageF out(h, w, img.channels());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < img.channels(); ++c) out.at(y, x, c) = img.at(y0 + y, x0 + x, c);
    }
  }
  return out;
}

int cmd_degrade(const CommonFlags& flags, const std::string& in_dir, const std::string& out_dir,
                bool crop_patches) {
  const RunConfig config = flags.load();
  const std::vector<fs::path> inputs = list_pngs(in_dir);
  fs::create_directories(out_dir);

  const fs::path manifest_path = fs::path(out_dir) / "manifest.jsonl";
  if (inputs.empty()) {
    std::cerr << "warning: no PNG inputs in " << in_dir << "\n";
    std::ofstream(manifest_path);  // empty manifest
    return 0;
  }

  std::vector<std::optional<DatasetRecord>> records(inputs.size());
  std::mutex log_mutex;

  parallel_for_index(static_cast<int>(inputs.size()), resolve_workers(config), [&](int idx) {
    const fs::path& hq_path = inputs[static_cast<std::size_t>(idx)];
    try {
      ImageF hq = read_png(hq_path.string());
      Rng rng(config.seed, static_cast<std::uint64_t>(idx));
      if (crop_patches) hq = random_patch(hq, config.patch_size, rng);

      PipelineResult result = apply_pipeline(hq, config.pipeline, rng);

      const std::string stem = hq_path.stem().string();
      const fs::path lq_path = fs::path(out_dir) / (stem + ".png");
      const fs::path log_path = fs::path(out_dir) / (stem + ".oplog.json");
      write_png(lq_path.string(), result.lq);
      std::ofstream(log_path) << oplog_to_json(result.log, 2) << "\n";

      records[static_cast<std::size_t>(idx)] =
          build_record(hq_path.string(), lq_path.string(), std::move(result.log));
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(log_mutex);
      std::cerr << "warning: skipping " << hq_path.string() << ": " << e.what() << "\n";
    }
  });

  std::ofstream manifest(manifest_path);
  std::size_t written = 0;
  for (const auto& record : records) {
    if (!record) continue;
    manifest << record_to_json(*record) << "\n";
    ++written;
  }
  std::cout << "degraded " << written << "/" << inputs.size() << " images into " << out_dir
            << "\n";
  return written == 0 ? 1 : 0;
}

// ---------------------------- restore-oracle ----------------------------

int cmd_restore_oracle(const CommonFlags& flags, const std::string& hq_dir,
                       const std::string& lq_dir, const std::string& out_dir,
                       const std::string& mode_flag, std::optional<double> predictor_noise) {
  RunConfig config = flags.load();
  if (!mode_flag.empty()) {
    if (mode_flag == "posterior") {
      config.restore.mode = RestoreMode::kPosterior;
    } else if (mode_flag == "reverse-sde") {
      config.restore.mode = RestoreMode::kReverseSde;
    } else {
      std::cerr << "error: unknown mode '" << mode_flag << "'\n";
      return 2;
    }
  }
  if (predictor_noise) config.restore.predictor_noise = *predictor_noise;

  const NoiseSchedule sched = config.schedule.make();
  fs::create_directories(out_dir);

  std::vector<std::pair<fs::path, fs::path>> pairs;
  for (const fs::path& hq : list_pngs(hq_dir)) {
    const fs::path lq = fs::path(lq_dir) / hq.filename();
    if (fs::exists(lq)) {
      pairs.emplace_back(hq, lq);
    } else {
      std::cerr << "warning: no LQ counterpart for " << hq.filename().string() << ", skipping\n";
    }
  }
  if (pairs.empty()) {
    std::cerr << "error: no HQ/LQ pairs found\n";
    return 1;
  }

  struct Row {
    std::string name;
    double psnr_before, ssim_before, psnr_after, ssim_after;
    bool ok = false;
  };
  std::vector<Row> rows(pairs.size());
  std::mutex log_mutex;

  parallel_for_index(static_cast<int>(pairs.size()), resolve_workers(config), [&](int idx) {
    const auto& [hq_path, lq_path] = pairs[static_cast<std::size_t>(idx)];
    Row& row = rows[static_cast<std::size_t>(idx)];
    row.name = hq_path.filename().string();
    try {
      const ImageF hq = read_png(hq_path.string());
      const ImageF lq = read_png(lq_path.string());
      Rng rng(config.seed, static_cast<std::uint64_t>(idx));

      std::unique_ptr<NoisePredictor<float>> predictor;
      if (config.restore.predictor_noise > 0.0) {
        predictor = std::make_unique<PerturbedOraclePredictor<float>>(
            sched, hq, config.restore.predictor_noise,
            config.seed ^ 0xA5A5A5A5ULL ^ static_cast<std::uint64_t>(idx));
      } else {
        predictor = std::make_unique<OracleNoisePredictor<float>>(sched, hq);
      }

      ImageF restored;
      if (config.restore.mode == RestoreMode::kPosterior) {
        restored = posterior_sample_loop<float>(sched, lq, *predictor, rng).restored;
      } else {
        restored = reverse_sde_sample_loop<float>(sched, lq, *predictor, rng);
      }
      restored.clamp(0.0f, 1.0f);
      write_png((fs::path(out_dir) / hq_path.filename()).string(), restored);

      row.psnr_before = psnr(lq, hq);
      row.ssim_before = ssim(lq, hq);
      row.psnr_after = psnr(restored, hq);
      row.ssim_after = ssim(restored, hq);
      row.ok = true;
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(log_mutex);
      std::cerr << "warning: skipping " << row.name << ": " << e.what() << "\n";
    }
  });

  std::ofstream csv(fs::path(out_dir) / "restore_metrics.csv");
  csv << "filename,psnr_before,ssim_before,psnr_after,ssim_after\n";
  double sum_before = 0.0, sum_after = 0.0;
  std::size_t ok_count = 0;
  for (const Row& row : rows) {
    if (!row.ok) continue;
    csv << row.name << ',' << format_metric(row.psnr_before) << ',' << format_metric(row.ssim_before)
        << ',' << format_metric(row.psnr_after) << ',' << format_metric(row.ssim_after) << "\n";
    sum_before += psnr_capped(row.psnr_before);
    sum_after += psnr_capped(row.psnr_after);
    ++ok_count;
  }
  if (ok_count == 0) {
    std::cerr << "error: all pairs failed\n";
    return 1;
  }
  std::cout << "restored " << ok_count << " image(s); mean psnr " << format_metric(sum_before / ok_count)
            << " -> " << format_metric(sum_after / ok_count) << " dB (capped)\n";
  return 0;
}

// -------------------------------- verify --------------------------------

int cmd_verify(const CommonFlags& flags, const std::string& only) {
  const RunConfig config = flags.load();
  verify::VerifyOptions options;
  options.only = only;
  options.seed = config.seed;
  options.workers = config.workers;

  std::vector<verify::CheckResult> results;
  try {
    results = verify::run_checks(options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& result : results) {
    std::printf("%-26s %-4s (%6.2f s)  %s\n", result.name.c_str(),
                result.passed ? "PASS" : "FAIL", result.seconds, result.detail.c_str());
  }
  const bool ok = verify::all_passed(results);
  std::printf("%zu check(s) run: %s\n", results.size(), ok ? "all passed" : "FAILURES");
  return ok ? 0 : 1;
}

// -------------------------------- metrics -------------------------------

int cmd_metrics(const CommonFlags& flags, const std::string& ref_dir, const std::string& in_dir,
                const std::string& out_file) {
  const RunConfig config = flags.load();
  std::vector<std::pair<fs::path, fs::path>> pairs;
  for (const fs::path& ref : list_pngs(ref_dir)) {
    const fs::path other = fs::path(in_dir) / ref.filename();
    if (fs::exists(other)) pairs.emplace_back(ref, other);
  }
  if (pairs.empty()) {
    std::cerr << "error: no matching filenames between " << ref_dir << " and " << in_dir << "\n";
    return 1;
  }

  struct Row {
    std::string name;
    double psnr_db = 0.0, ssim_val = 0.0;
    bool ok = false;
  };
  std::vector<Row> rows(pairs.size());
  std::mutex log_mutex;
  parallel_for_index(static_cast<int>(pairs.size()), resolve_workers(config), [&](int idx) {
    Row& row = rows[static_cast<std::size_t>(idx)];
    row.name = pairs[static_cast<std::size_t>(idx)].first.filename().string();
    try {
      const ImageF a = read_png(pairs[static_cast<std::size_t>(idx)].first.string());
      const ImageF b = read_png(pairs[static_cast<std::size_t>(idx)].second.string());
      row.psnr_db = psnr(b, a);
      row.ssim_val = ssim(b, a);
      row.ok = true;
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(log_mutex);
      std::cerr << "warning: skipping " << row.name << ": " << e.what() << "\n";
    }
  });

  std::ofstream csv(out_file);
  if (!csv) {
    std::cerr << "error: cannot write " << out_file << "\n";
    return 1;
  }
  csv << "filename,psnr_db,ssim\n";
  double sum_psnr = 0.0, sum_ssim = 0.0;
  std::size_t ok_count = 0;
  for (const Row& row : rows) {
    if (!row.ok) continue;
    csv << row.name << ',' << format_metric(row.psnr_db) << ',' << format_metric(row.ssim_val)
        << "\n";
    sum_psnr += psnr_capped(row.psnr_db);
    sum_ssim += row.ssim_val;
    ++ok_count;
  }
  if (ok_count == 0) {
    std::cerr << "error: all pairs failed\n";
    return 1;
  }
  csv << "mean," << format_metric(sum_psnr / ok_count) << ',' << format_metric(sum_ssim / ok_count)
      << "\n";
  std::cout << "wrote " << out_file << " (" << ok_count << " pairs)\n";
  return 0;
}

// ----------------------------- schedule-dump ----------------------------

int cmd_schedule_dump(const CommonFlags& flags, const std::string& out_file) {
  const RunConfig config = flags.load();
  const NoiseSchedule sched = config.schedule.make();
  if (out_file.empty()) {
    sched.dump_csv(std::cout);
  } else {
    std::ofstream csv(out_file);
    if (!csv) {
      std::cerr << "error: cannot write " << out_file << "\n";
      return 1;
    }
    sched.dump_csv(csv);
    std::cout << "wrote " << out_file << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mean-reverting SDE restoration toolkit"};
  app.require_subcommand(1);

  CommonFlags degrade_flags, restore_flags, verify_flags, metrics_flags, dump_flags;

  auto* degrade = app.add_subcommand("degrade", "Synthesize LQ images, op logs and a manifest");
  std::string degrade_in, degrade_out;
  bool degrade_patches = false;
  degrade->add_option("--in", degrade_in, "Directory of HQ PNG images")->required();
  degrade->add_option("--out", degrade_out, "Output directory")->required();
  degrade->add_flag("--patch", degrade_patches, "Crop a random patch (config patch_size) first");
  degrade_flags.attach(degrade);

  auto* restore = app.add_subcommand("restore-oracle", "Restore LQ images with an oracle predictor");
  std::string restore_hq, restore_lq, restore_out, restore_mode;
  std::optional<double> restore_noise;
  restore->add_option("--hq", restore_hq, "Directory of HQ PNG images (oracle source)")->required();
  restore->add_option("--in,--lq", restore_lq, "Directory of LQ PNG images")->required();
  restore->add_option("--out", restore_out, "Output directory")->required();
  restore->add_option("--mode", restore_mode, "posterior | reverse-sde");
  restore->add_option("--predictor-noise", restore_noise, "Perturbed-oracle noise sigma");
  restore_flags.attach(restore);

  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite");
  std::string verify_only;
  verify_cmd->add_option("--only", verify_only, "Run a single named check");
  verify_flags.attach(verify_cmd);

  auto* metrics_cmd = app.add_subcommand("metrics", "PSNR/SSIM report for two directories");
  std::string metrics_ref, metrics_in, metrics_out = "metrics.csv";
  metrics_cmd->add_option("--ref", metrics_ref, "Reference (HQ) directory")->required();
  metrics_cmd->add_option("--in", metrics_in, "Directory to evaluate")->required();
  metrics_cmd->add_option("--out", metrics_out, "Output CSV path");
  metrics_flags.attach(metrics_cmd);

  auto* dump = app.add_subcommand("schedule-dump", "Dump the noise schedule as CSV");
  std::string dump_out;
  dump->add_option("--out", dump_out, "Output CSV path (default stdout)");
  dump_flags.attach(dump);

  CLI11_PARSE(app, argc, argv);

  try {
    if (degrade->parsed()) return cmd_degrade(degrade_flags, degrade_in, degrade_out, degrade_patches);
    if (restore->parsed()) {
      return cmd_restore_oracle(restore_flags, restore_hq, restore_lq, restore_out, restore_mode,
                                restore_noise);
    }
    if (verify_cmd->parsed()) return cmd_verify(verify_flags, verify_only);
    if (metrics_cmd->parsed()) return cmd_metrics(metrics_flags, metrics_ref, metrics_in, metrics_out);
    if (dump->parsed()) return cmd_schedule_dump(dump_flags, dump_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
