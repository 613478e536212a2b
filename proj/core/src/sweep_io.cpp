// SPDX-License-Identifier: Apache-2.0
//
// fracsim: FBMC-OQAM transmit diversity simulator with frequency-reversal
// Alamouti coding under per-antenna carrier frequency offsets.

#include "fracsim/sweep_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fracsim {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        size_t pos = 0;
        out.push_back(std::stod(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
    }
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (double v : parse_doubles(s)) out.push_back(static_cast<int>(v));
    return out;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& is) {
    SweepConfig cfg;
    cfg.snr_db.clear();
    cfg.iafo_norm.clear();
    cfg.nf_half.clear();
    std::string line;
    while (std::getline(is, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (!trim(line).empty())
                throw std::invalid_argument("sweep config: expected key = value, got '" + line + "'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "scheme") cfg.scheme = scheme_from_string(val);
        else if (key == "channel") cfg.channel = val;
        else if (key == "snr_db") cfg.snr_db = parse_doubles(val);
        else if (key == "iafo_norm") cfg.iafo_norm = parse_doubles(val);
        else if (key == "nf_half") cfg.nf_half = parse_ints(val);
        else if (key == "trials") cfg.trials = std::stoi(val);
        else if (key == "seed") cfg.seed = std::stoull(val);
        else if (key == "n") cfg.n = std::stoi(val);
        else if (key == "l_n" || key == "guard") cfg.guard = std::stoi(val);
        else if (key == "pam_levels") cfg.pam_levels = std::stoi(val);
        else if (key == "m_half") cfg.m_half = std::stoi(val);
        else if (key == "eps_hz") cfg.eps_hz = std::stod(val);
        else throw std::invalid_argument("sweep config: unknown key '" + key + "'");
    }
    return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("sweep config: cannot open '" + path + "'");
    return parse_sweep_config(f);
}

void write_ber_csv(std::ostream& os, const std::vector<BerRecord>& records, bool incomplete) {
    os << "scheme,channel,snr_db,iafo_norm,nf_half,trials,bits,bit_errors,ber,ci95\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%.6g,%.6g,%d,%d,%lld,%lld,%.9e,%.9e\n",
                      to_string(r.scheme).c_str(), r.channel.c_str(), r.snr_db, r.iafo_norm,
                      r.nf_half, r.trials, static_cast<long long>(r.bits),
                      static_cast<long long>(r.bit_errors), r.ber, r.ci95);
        os << buf;
    }
    if (incomplete) os << "# incomplete\n";
}

std::vector<BerRecord> read_ber_csv(std::istream& is) {
    std::vector<BerRecord> out;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!header_seen) {
            if (t != "scheme,channel,snr_db,iafo_norm,nf_half,trials,bits,bit_errors,ber,ci95")
                throw CsvError(line_no, "unexpected CSV header");
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(t);
        std::string tok;
        while (std::getline(ss, tok, ',')) cells.push_back(tok);
        if (cells.size() != 10) throw CsvError(line_no, "expected 10 columns");
        try {
            BerRecord r;
            r.scheme = scheme_from_string(cells[0]);
            r.channel = cells[1];
            r.snr_db = std::stod(cells[2]);
            r.iafo_norm = std::stod(cells[3]);
            r.nf_half = std::stoi(cells[4]);
            r.trials = std::stoi(cells[5]);
            r.bits = std::stoll(cells[6]);
            r.bit_errors = std::stoll(cells[7]);
            r.ber = std::stod(cells[8]);
            r.ci95 = std::stod(cells[9]);
            out.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw CsvError(line_no, e.what());
        }
    }
    if (!header_seen) throw CsvError(line_no, "empty CSV");
    if (out.empty()) throw CsvError(line_no, "CSV has no data rows");
    return out;
}

}  // namespace fracsim
