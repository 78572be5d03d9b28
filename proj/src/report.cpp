#include "reslevy/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace reslevy {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << text;
        out.flush();
        if (!out) throw std::runtime_error("short write: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }
}

namespace {

Json meta_to_json(const ReportMeta& meta) {
    Json m;
    m["command"] = meta.command;
    m["seed"] = meta.seed;
    m["timestamp"] = meta.timestamp;
    m["version"] = kToolVersion;
    m["workers"] = meta.workers;
    Json settings = Json::object();
    for (const auto& [k, v] : meta.settings) settings[k] = v;
    m["settings"] = settings;
    return m;
}

}  // namespace

std::string render_json_report(const ReportMeta& meta, const Json& body) {
    Json doc;
    doc["meta"] = meta_to_json(meta);
    doc["body"] = body;
    return doc.dump(2) + "\n";
}

std::string render_csv_report(const ReportMeta& meta, const CsvDocument& doc) {
    std::string out;
    out += "# command=" + meta.command + "\n";
    out += "# version=" + std::string(kToolVersion) + "\n";
    out += "# seed=" + std::to_string(meta.seed) + "\n";
    out += "# workers=" + std::to_string(meta.workers) + "\n";
    for (const auto& [k, v] : meta.settings) {
        out += "# " + k + "=" + v + "\n";
    }
    out += "# timestamp=" + meta.timestamp + "\n";
    for (std::size_t c = 0; c < doc.columns.size(); ++c) {
        if (c) out += ',';
        out += doc.columns[c];
    }
    out += '\n';
    for (const auto& row : doc.rows) {
        if (row.size() != doc.columns.size()) {
            throw std::logic_error("render_csv_report: row width mismatch");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += row[c];
        }
        out += '\n';
    }
    for (const auto& f : doc.footers) {
        out += "# " + f + "\n";
    }
    return out;
}

Json to_json(const EstimateWithCI& e) {
    Json j;
    j["mean"] = json_number(e.mean);
    j["half_width_95"] = json_number(e.half_width_95);
    j["n"] = e.n;
    j["censored_fraction"] = json_number(e.censored_fraction);
    return j;
}

Json to_json(const KsReport& r) {
    Json j;
    j["statistic"] = json_number(r.statistic);
    j["n"] = r.n;
    j["threshold"] = json_number(r.threshold);
    j["level"] = json_number(r.level);
    j["rejected"] = r.rejected;
    return j;
}

Json to_json(const ClassificationVerdict& v) {
    Json j;
    j["verdict"] = verdict_name(v.verdict);
    j["rule"] = v.rule;
    Json ev = Json::object();
    for (const auto& [k, val] : v.evidence) ev[k] = json_number(val);
    j["evidence"] = ev;
    return j;
}

Json to_json(const HinfResult& h) {
    Json j;
    j["sup_value"] = json_number(h.sup_value);
    j["argmax"] = json_number(h.argmax);
    j["argmax_region"] = h.argmax_region;
    return j;
}

Json to_json(const FeynmanKacResult& r) {
    Json j;
    j["lhs"] = to_json(r.lhs);
    j["rhs"] = to_json(r.rhs);
    j["compatible"] = r.compatible;
    j["unstable"] = r.unstable;
    j["max_weight"] = json_number(r.max_weight);
    j["n_overflow"] = r.n_overflow;
    return j;
}

Json to_json(const ExponentialLawResult& r) {
    Json j;
    j["ks"] = to_json(r.ks);
    j["mean"] = json_number(r.integral.mean);
    j["sd"] = json_number(r.integral.sd);
    j["n"] = r.integral.n;
    j["censored_fraction"] = json_number(r.censored_fraction);
    return j;
}

Json to_json(const DominationResult& r) {
    Json j;
    j["d_plus"] = json_number(r.d_plus);
    j["band"] = json_number(r.band);
    j["dominated"] = r.dominated;
    j["tau"] = to_json(r.tau);
    j["mean_lower_bound"] = json_number(r.mean_lower_bound);
    j["rate"] = json_number(r.rate);
    j["censored_fraction"] = json_number(r.censored_fraction);
    j["n_absorbed"] = r.n_absorbed;
    return j;
}

Json to_json(const KernelInvarianceRow& r) {
    Json j;
    j["x"] = json_number(r.x);
    j["direct"] = to_json(r.direct);
    j["stepped"] = to_json(r.stepped);
    j["table_half_width"] = json_number(r.table_half_width);
    j["compatible"] = r.compatible;
    j["inconclusive"] = r.inconclusive;
    return j;
}

Json to_json(const ZeroOneProbeRow& r) {
    Json j;
    j["x"] = json_number(r.x);
    j["n"] = r.n;
    j["n_absorbed"] = r.n_absorbed;
    j["n_crept"] = r.n_crept;
    j["n_survived"] = r.n_survived;
    j["n_budget"] = r.n_budget;
    j["freq_absorbed"] = json_number(r.freq_absorbed);
    j["ci_low"] = json_number(r.ci_low);
    j["ci_high"] = json_number(r.ci_high);
    return j;
}

Json to_json(const ScalingResult& r) {
    Json j;
    j["exponent"] = json_number(r.exponent);
    Json pairs = Json::array();
    for (const auto& p : r.pairs) {
        Json pj;
        pj["x_a"] = json_number(p.x_a);
        pj["x_b"] = json_number(p.x_b);
        pj["ks"] = to_json(p.ks);
        pairs.push_back(pj);
    }
    j["pairs"] = pairs;
    j["any_rejected"] = r.any_rejected;
    j["inconclusive"] = r.inconclusive;
    j["censored_fraction"] = json_number(r.censored_fraction);
    return j;
}

CsvDocument trace_csv(const ResurrectionTrace& tr) {
    CsvDocument doc;
    doc.columns = {"n", "tau_n", "z_tau_n"};
    doc.rows.reserve(tr.tau_seq.size());
    for (std::size_t i = 0; i < tr.tau_seq.size(); ++i) {
        doc.rows.push_back({std::to_string(i + 1), format_double(tr.tau_seq[i]),
                            format_double(tr.pos_seq[i])});
    }
    doc.footers.push_back(std::string("status=") + trace_status_name(tr.status));
    if (tr.status == TraceStatus::AbsorbedNumerically ||
        tr.status == TraceStatus::CreptToZero) {
        doc.footers.push_back("zeta=" + format_double(tr.zeta));
    }
    doc.footers.push_back("ambiguous_crossings=" + std::to_string(tr.ambiguous_crossings));
    return doc;
}

}  // namespace reslevy
