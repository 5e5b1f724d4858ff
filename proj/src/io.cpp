#include "ratiolab/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ratiolab/errors.hpp"

namespace ratiolab::io {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    for (auto& c : cells) {
        while (!c.empty() && std::isspace(static_cast<unsigned char>(c.front())))
            c.erase(c.begin());
        while (!c.empty() && std::isspace(static_cast<unsigned char>(c.back())))
            c.pop_back();
    }
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    return in;
}

[[noreturn]] void throw_itemized(const std::string& path,
                                 const std::vector<std::string>& problems) {
    std::ostringstream msg;
    msg << path << ": " << problems.size() << " bad row(s):";
    for (const auto& p : problems) msg << "\n  " << p;
    throw ParseError(msg.str());
}

}  // namespace

regression::ScatterData Dataset::as_scatter(regression::XKind kind,
                                            long* skipped) const {
    if (skipped) *skipped = 0;
    if (schema == InputSchema::xy) {
        regression::ScatterData out = xy;
        out.x_kind = kind;
        out.validate();
        return out;
    }
    regression::ScatterData out;
    out.x_kind = kind;
    for (const auto& rec : records) {
        if (kind == regression::XKind::ratio) {
            if (rec.n_count == 0) {
                if (skipped) ++*skipped;
                continue;
            }
            out.points.push_back({rec.p_count / rec.n_count, rec.outcome});
        } else if (kind == regression::XKind::fraction) {
            out.points.push_back(
                {regression::fraction_from_counts(rec.p_count, rec.n_count),
                 rec.outcome});
        } else {
            throw DomainError("positivity records require ratio or fraction view");
        }
    }
    out.validate();
    return out;
}

Dataset load_records(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    const auto header = split_csv_line(line);
    std::vector<std::string> names;
    for (const auto& h : header) names.push_back(lower(h));

    Dataset ds;
    bool is_positivity;
    if (names == std::vector<std::string>{"p", "n", "outcome"}) {
        ds.schema = InputSchema::positivity;
        is_positivity = true;
    } else if (names == std::vector<std::string>{"x", "y"}) {
        ds.schema = InputSchema::xy;
        is_positivity = false;
    } else {
        throw ParseError(path + ": header must be 'p,n,outcome' or 'x,y', got '" +
                         line + "'");
    }

    std::vector<std::string> problems;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv_line(line);
        const size_t want = is_positivity ? 3 : 2;
        if (cells.size() != want) {
            problems.push_back("line " + std::to_string(lineno) + ": expected " +
                               std::to_string(want) + " columns");
            continue;
        }
        std::vector<double> vals(cells.size());
        bool ok = true;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (!parse_double(cells[i], vals[i]) || !std::isfinite(vals[i])) {
                problems.push_back("line " + std::to_string(lineno) +
                                   ": non-numeric cell '" + cells[i] + "'");
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (is_positivity) {
            if (vals[0] < 0 || vals[1] < 0) {
                problems.push_back("line " + std::to_string(lineno) +
                                   ": negative count");
                continue;
            }
            if (vals[0] == 0 && vals[1] == 0) {
                problems.push_back("line " + std::to_string(lineno) +
                                   ": p and n both zero");
                continue;
            }
            ds.records.push_back({vals[0], vals[1], vals[2]});
        } else {
            ds.xy.points.push_back({vals[0], vals[1]});
        }
    }
    if (!problems.empty()) throw_itemized(path, problems);
    return ds;
}

std::vector<LabeledSummary> load_summaries(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    auto names = split_csv_line(line);
    for (auto& n : names) n = lower(n);
    if (names != std::vector<std::string>{"sample", "n1", "n2", "mean1", "mean2", "t"})
        throw ParseError(path + ": header must be 'sample,n1,n2,mean1,mean2,t'");

    std::vector<LabeledSummary> out;
    std::vector<std::string> problems;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 6) {
            problems.push_back("line " + std::to_string(lineno) + ": expected 6 columns");
            continue;
        }
        double vals[5];
        bool ok = true;
        for (int i = 0; i < 5; ++i) {
            if (!parse_double(cells[i + 1], vals[i])) {
                problems.push_back("line " + std::to_string(lineno) +
                                   ": non-numeric cell '" + cells[i + 1] + "'");
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        LabeledSummary s;
        s.label = cells[0];
        s.stats = {vals[0], vals[1], vals[2], vals[3], vals[4]};
        try {
            s.stats.validate();
        } catch (const Error& e) {
            problems.push_back("line " + std::to_string(lineno) + ": " + e.what());
            continue;
        }
        out.push_back(std::move(s));
    }
    if (!problems.empty()) throw_itemized(path, problems);
    return out;
}

void write_transformed(const std::string& path,
                       const std::vector<PositivityRecord>& records) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << "p,n,outcome,ratio,fraction\n";
    char buf[192];
    for (const auto& r : records) {
        const double frac = regression::fraction_from_counts(r.p_count, r.n_count);
        // %.17g keeps doubles round-trip exact.
        if (r.n_count > 0) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          r.p_count, r.n_count, r.outcome, r.p_count / r.n_count,
                          frac);
        } else {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,,%.17g\n", r.p_count,
                          r.n_count, r.outcome, frac);
        }
        out << buf;
    }
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace ratiolab::io
