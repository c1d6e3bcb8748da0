#include <fstream>
#include <ostream>
#include <stdexcept>

#include "divvar/experiments.hpp"

namespace divvar {

SweepResult run_sweep(const SweepConfig& cfg, std::ostream& log) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);

    SweepResult res;
    res.csv_path = cfg.out_dir / "sweep.csv";
    res.records_path = cfg.out_dir / "records.jsonl";
    std::ofstream csv(res.csv_path, std::ios::trunc);
    std::ofstream records(res.records_path, std::ios::trunc);
    if (!csv || !records) throw std::runtime_error("sweep: cannot write into " + cfg.out_dir.string());
    csv << kCsvHeader << '\n' << std::flush;

    // Points run one after another; each point parallelises internally.
    for (int k : cfg.k_list) {
        for (u64 d : cfg.d_list) {
            for (double c : cfg.c_list) {
                ExperimentConfig ec;
                ec.k = k;
                ec.d = d;
                ec.c = c;
                ec.cutoff = cfg.cutoff;
                ec.gamma_method = cfg.gamma_method;
                ec.constants.prime_bound = cfg.prime_bound;
                ec.constants.samples = cfg.samples;
                ec.constants.seed = cfg.seed;
                ec.constants.workers = cfg.workers;
                ec.variance.workers = cfg.workers;
                ec.variance.segment = cfg.segment;
                try {
                    auto rep = experiment(ec);
                    csv << format_csv_row(CsvRow::from_report(rep)) << '\n' << std::flush;
                    records << make_record(rep).dump() << '\n' << std::flush;
                    log << "k=" << k << " d=" << d << " c=" << c << " ratio=" << rep.ratio << " (" << rep.wall_time_s
                        << " s)\n";
                    res.reports.push_back(std::move(rep));
                } catch (const std::exception& e) {
                    ++res.failures;
                    log << "k=" << k << " d=" << d << " c=" << c << " FAILED: " << e.what() << '\n';
                }
            }
        }
    }
    return res;
}

}  // namespace divvar
