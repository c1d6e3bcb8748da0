#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "divvar/experiments.hpp"

namespace divvar {

namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        // Allow 1e6 style for integer keys.
        if constexpr (std::is_integral_v<T>) {
            double dv = 0.0;
            auto [p2, ec2] = std::from_chars(first, last, dv);
            if (ec2 == std::errc() && p2 == last && dv >= 0 && dv == static_cast<double>(static_cast<T>(dv))) {
                return static_cast<T>(dv);
            }
        }
        throw std::invalid_argument("config: bad value '" + text + "' for key '" + key + "'");
    }
    return value;
}

}  // namespace

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 p : primes_up_to(hi)) {
        if (p >= lo) out.push_back(p);
    }
    return out;
}

void apply_config_key(SweepConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "k") {
        cfg.k_list.clear();
        for (const auto& s : split_list(value)) cfg.k_list.push_back(parse_number<int>(key, s));
    } else if (key == "d") {
        cfg.d_list.clear();
        for (const auto& s : split_list(value)) cfg.d_list.push_back(parse_number<u64>(key, s));
    } else if (key == "d_primes") {
        const auto dots = value.find("..");
        if (dots == std::string::npos) throw std::invalid_argument("config: d_primes expects lo..hi");
        const u64 lo = parse_number<u64>(key, trim(value.substr(0, dots)));
        const u64 hi = parse_number<u64>(key, trim(value.substr(dots + 2)));
        cfg.d_list = primes_in_range(lo, hi);
    } else if (key == "c") {
        cfg.c_list.clear();
        for (const auto& s : split_list(value)) cfg.c_list.push_back(parse_number<double>(key, s));
    } else if (key == "cutoff") {
        cfg.cutoff = cutoff_from_string(value);
    } else if (key == "gamma_method") {
        cfg.gamma_method = gamma_method_from_string(value);
    } else if (key == "prime_bound") {
        cfg.prime_bound = parse_number<u64>(key, value);
    } else if (key == "samples") {
        cfg.samples = parse_number<u64>(key, value);
    } else if (key == "seed") {
        cfg.seed = parse_number<u64>(key, value);
    } else if (key == "out") {
        cfg.out_dir = value;
    } else if (key == "workers") {
        cfg.workers = parse_number<int>(key, value);
    } else if (key == "segment") {
        cfg.segment = parse_number<std::size_t>(key, value);
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

SweepConfig parse_config(std::istream& in) {
    SweepConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        }
        apply_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

SweepConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    return parse_config(in);
}

void SweepConfig::validate() const {
    for (int k : k_list) {
        if (k < 1 || k > kMaxTauK) throw std::invalid_argument("config: k = " + std::to_string(k) + " out of range");
        for (double c : c_list) {
            bool ok = false;
            switch (gamma_method) {
                case GammaMethod::Simple: ok = c > k - 1 && c < k; break;
                case GammaMethod::Piecewise: ok = k <= 3 && c >= 0 && c <= k; break;
                case GammaMethod::MonteCarlo: ok = k <= 5 && c > 0 && c < k; break;
            }
            if (!ok) {
                throw std::invalid_argument("config: c = " + std::to_string(c) + " is outside the domain of the " +
                                            std::string(to_string(gamma_method)) + " gamma evaluator for k = " +
                                            std::to_string(k));
            }
        }
    }
    for (u64 d : d_list) {
        if (d < 2) throw std::invalid_argument("config: every d must be at least 2");
    }
    if (segment == 0) throw std::invalid_argument("config: segment must be positive");
}

}  // namespace divvar
