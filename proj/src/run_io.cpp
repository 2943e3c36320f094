#include "mcmo/run_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mcmo {

namespace {

// Shortest round-trip-exact decimal form.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, const std::string& path, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) parse_fail(path, line_no, "trailing characters in number '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        parse_fail(path, line_no, "not a number: '" + s + "'");
    } catch (const std::out_of_range&) {
        parse_fail(path, line_no, "number out of range: '" + s + "'");
    }
}

}  // namespace

void write_records_csv(const std::string& path, const std::vector<EvaluationRecord>& records,
                       int p, int d, int m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_records_csv: cannot open " + path);
    out << "episode";
    for (int i = 0; i < p; ++i) out << ",c" << i;
    for (int i = 0; i < d; ++i) out << ",x" << i;
    for (int i = 0; i < m; ++i) out << ",f" << i;
    out << ",reward";
    for (int i = 0; i < m; ++i) out << ",w" << i;
    out << ",failed\n";
    for (const auto& r : records) {
        out << r.episode;
        for (double v : r.condition_raw) out << ',' << fmt(v);
        for (double v : r.decision_raw) out << ',' << fmt(v);
        for (double v : r.objectives) out << ',' << fmt(v);
        out << ',' << fmt(r.reward);
        for (double v : r.weight) out << ',' << fmt(v);
        out << ',' << (r.failed ? 1 : 0) << '\n';
    }
    if (!out) throw std::runtime_error("write_records_csv: write failed for " + path);
}

std::vector<EvaluationRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_records_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) parse_fail(path, 1, "missing header");
    const auto header = split_csv(line);
    int p = 0, d = 0, m = 0, w = 0;
    for (const auto& h : header) {
        if (h.starts_with('c')) ++p;
        else if (h.starts_with('x')) ++d;
        else if (h.starts_with('f') && h != "failed") ++m;
        else if (h.starts_with('w')) ++w;
    }
    if (p < 1 || d < 1 || m < 2 || w != m) parse_fail(path, 1, "unrecognized header layout");
    const std::size_t expected = 1 + p + d + m + 1 + m + 1;

    std::vector<EvaluationRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != expected) {
            parse_fail(path, line_no, "expected " + std::to_string(expected) + " fields, got " +
                                          std::to_string(fields.size()));
        }
        EvaluationRecord r;
        std::size_t k = 0;
        r.episode = static_cast<long>(parse_double(fields[k++], path, line_no));
        for (int i = 0; i < p; ++i) r.condition_raw.push_back(parse_double(fields[k++], path, line_no));
        for (int i = 0; i < d; ++i) r.decision_raw.push_back(parse_double(fields[k++], path, line_no));
        for (int i = 0; i < m; ++i) r.objectives.push_back(parse_double(fields[k++], path, line_no));
        r.reward = parse_double(fields[k++], path, line_no);
        for (int i = 0; i < m; ++i) r.weight.push_back(parse_double(fields[k++], path, line_no));
        const std::string& flag = fields[k];
        if (flag != "0" && flag != "1") parse_fail(path, line_no, "failed flag must be 0 or 1");
        r.failed = flag == "1";
        records.push_back(std::move(r));
    }
    return records;
}

void write_hv_csv(const std::string& path, const std::vector<HVPoint>& history) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_hv_csv: cannot open " + path);
    out << "episode,hv_avg\n";
    for (const auto& h : history) out << h.episode << ',' << fmt(h.hv_avg) << '\n';
    if (!out) throw std::runtime_error("write_hv_csv: write failed for " + path);
}

std::vector<HVPoint> read_hv_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_hv_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) parse_fail(path, 1, "missing header");
    std::vector<HVPoint> history;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2) parse_fail(path, line_no, "expected 2 fields");
        history.push_back({static_cast<long>(parse_double(fields[0], path, line_no)),
                           parse_double(fields[1], path, line_no)});
    }
    return history;
}

void write_fronts_csv(const std::string& path, const std::vector<EvaluationRecord>& records,
                      const DecompositionGrid& grid) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_fronts_csv: cannot open " + path);

    int d = 0, m = 0;
    for (const auto& r : records) {
        if (!r.failed) {
            d = static_cast<int>(r.decision_raw.size());
            m = static_cast<int>(r.objectives.size());
            break;
        }
    }
    out << "cell,c_lo,c_hi";
    for (int i = 0; i < d; ++i) out << ",x" << i;
    for (int i = 0; i < m; ++i) out << ",f" << i;
    out << ",episode\n";

    for (int cell = 0; cell < grid.cell_count(); ++cell) {
        const ParetoFront front = select_front(records, grid, cell);
        const auto [lo, hi] = grid.cell_bounds_raw(cell);
        for (int idx : front.member_indices) {
            const auto& r = records[idx];
            out << cell << ',' << fmt(lo) << ',' << fmt(hi);
            for (double v : r.decision_raw) out << ',' << fmt(v);
            for (double v : r.objectives) out << ',' << fmt(v);
            out << ',' << r.episode << '\n';
        }
    }
    if (!out) throw std::runtime_error("write_fronts_csv: write failed for " + path);
}

void write_hv_report_json(const std::string& path, const HVReport& report) {
    nlohmann::json j;
    j["cells"] = report.per_cell.size();
    j["reference"] = {report.reference[0], report.reference[1]};
    j["hv_avg"] = report.hv_avg;
    j["per_cell"] = report.per_cell;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_hv_report_json: cannot open " + path);
    out << j.dump(2) << '\n';
}

void write_manifest(const std::string& path, const RunConfig& config) {
    nlohmann::json j;
    j["format"] = "mcmo-run-manifest";
    j["version"] = 1;
    j["config"] = nlohmann::json::parse(config.to_json_text());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write_manifest: write failed for " + path);
}

void write_experiment_report(const std::string& json_path, const std::string& csv_path,
                             const ExperimentReport& report) {
    nlohmann::json j;
    j["n_conditions"] = report.n_conditions;
    j["repetitions"] = report.repetitions;
    j["reference"] = {report.reference[0], report.reference[1]};
    j["conditions"] = report.conditions;
    j["hv_ref"] = report.hv_ref;
    j["sc_total"] = {{"mean", report.sc_total_mean},
                     {"min", report.sc_total_min},
                     {"max", report.sc_total_max}};
    j["mc_total"] = {{"mean", report.mc_total_mean},
                     {"min", report.mc_total_min},
                     {"max", report.mc_total_max}};
    auto dump_case = [](const std::vector<ConditionOutcome>& outcomes) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& o : outcomes) {
            arr.push_back({{"condition", o.condition},
                           {"evaluations", o.evaluations},
                           {"censored", o.censored},
                           {"final_hv", o.final_hv}});
        }
        return arr;
    };
    j["runs"] = nlohmann::json::array();
    for (const auto& run : report.runs) {
        j["runs"].push_back({{"sc", dump_case(run.sc)},
                             {"mc", dump_case(run.mc)},
                             {"sc_total", run.sc_total},
                             {"mc_total", run.mc_total}});
    }
    {
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("write_experiment_report: cannot open " + json_path);
        out << j.dump(2) << '\n';
    }

    // Flat per-condition table: the data behind the evaluation-count figure.
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("write_experiment_report: cannot open " + csv_path);
    csv << "repetition,case,condition,hv_ref,evaluations,censored,final_hv\n";
    for (std::size_t rep = 0; rep < report.runs.size(); ++rep) {
        const auto& run = report.runs[rep];
        for (std::size_t i = 0; i < run.sc.size(); ++i) {
            csv << rep << ",sc," << fmt(run.sc[i].condition) << ',' << fmt(report.hv_ref[i])
                << ',' << run.sc[i].evaluations << ',' << (run.sc[i].censored ? 1 : 0) << ','
                << fmt(run.sc[i].final_hv) << '\n';
        }
        for (std::size_t i = 0; i < run.mc.size(); ++i) {
            csv << rep << ",mc," << fmt(run.mc[i].condition) << ',' << fmt(report.hv_ref[i])
                << ',' << run.mc[i].evaluations << ',' << (run.mc[i].censored ? 1 : 0) << ','
                << fmt(run.mc[i].final_hv) << '\n';
        }
    }
    if (!csv) throw std::runtime_error("write_experiment_report: write failed for " + csv_path);
}

}  // namespace mcmo
