#include "fea/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fea {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) throw io_error(path, "cannot open for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error(path, "cannot open for reading");
    return in;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& path, const std::string& tok) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') throw io_error(path, "bad numeric field '" + tok + "'");
    return v;
}

long parse_long(const std::string& path, const std::string& tok) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') throw io_error(path, "bad integer field '" + tok + "'");
    return v;
}

void check_simplex(const std::string& path, const std::vector<double>& v, int line_no) {
    double sum = 0.0;
    for (double x : v) {
        if (!(x >= 0.0) || x > 1.0 + 1e-12)
            throw io_error(path, "line " + std::to_string(line_no) + ": entry outside [0, 1]");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw io_error(path, "line " + std::to_string(line_no) + ": row does not sum to 1");
}

} // namespace

void write_trace_csv(const Trace& trace, const std::string& path) {
    std::ofstream out = open_out(path);
    const int n = trace.world.n;
    for (const StepRecord& rec : trace.records) {
        out << rec.t << ',' << rec.psi_true << ',' << to_int(rec.s) << ','
            << static_cast<int>(action_step(rec.a)) << ',' << fmt(rec.free_energy_chosen);
        for (int j = 0; j < n; ++j) out << ',' << fmt(rec.belief[j]);
        for (int j = 0; j < n; ++j) {
            out << ',';
            if (!rec.exact.empty()) out << fmt(rec.exact[j]);
        }
        out << '\n';
    }
    if (!out) throw io_error(path, "write failed");
}

std::vector<StepRecord> read_trace_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::vector<StepRecord> records;
    std::string line;
    int n = -1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line);
        if (n < 0) {
            if (f.size() < 9 || (f.size() - 5) % 2 != 0)
                throw io_error(path, "malformed row: expected 5 + 2n fields (n >= 2)");
            n = static_cast<int>(f.size() - 5) / 2;
        } else if (f.size() != static_cast<std::size_t>(5 + 2 * n)) {
            throw io_error(path, "inconsistent column count");
        }
        StepRecord rec;
        rec.t = static_cast<int>(parse_long(path, f[0]));
        rec.psi_true = static_cast<int>(parse_long(path, f[1]));
        const long s = parse_long(path, f[2]);
        if (s != 0 && s != 1) throw io_error(path, "sensation field must be 0 or 1");
        rec.s = s == 1 ? Sensation::High : Sensation::Low;
        const long a = parse_long(path, f[3]);
        if (a != -1 && a != 1) throw io_error(path, "action field must be -1 or 1");
        rec.a = a == 1 ? Action::Clockwise : Action::Anticlockwise;
        rec.free_energy_chosen = parse_double(path, f[4]);
        rec.belief.resize(n);
        for (int j = 0; j < n; ++j) rec.belief[j] = parse_double(path, f[5 + j]);
        if (!f[5 + n].empty()) {
            rec.exact.resize(n);
            for (int j = 0; j < n; ++j) rec.exact[j] = parse_double(path, f[5 + n + j]);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void write_profile_csv(const std::vector<LocationProfile>& profiles, const std::string& path) {
    if (profiles.empty()) throw std::invalid_argument("write_profile_csv: no profiles");
    const std::size_t n = profiles.front().mean.size();
    for (const LocationProfile& p : profiles)
        if (p.mean.size() != n || p.stddev.size() != n)
            throw std::invalid_argument("write_profile_csv: profiles disagree on cell count");
    std::ofstream out = open_out(path);
    out << "cell";
    for (const LocationProfile& p : profiles)
        out << ",mean_" << p.iterations << ",std_" << p.iterations;
    out << '\n';
    for (std::size_t cell = 0; cell < n; ++cell) {
        out << cell;
        for (const LocationProfile& p : profiles)
            out << ',' << fmt(p.mean[cell]) << ',' << fmt(p.stddev[cell]);
        out << '\n';
    }
    if (!out) throw io_error(path, "write failed");
}

void write_kl_csv(const ComparisonTable& table, const std::string& path) {
    const std::size_t groups = table.sweep.size();
    if (table.kl.size() != groups || table.entropy.size() != groups)
        throw std::invalid_argument("write_kl_csv: sweep and column groups disagree");
    const std::size_t steps = table.entropy_exact.size();
    for (std::size_t i = 0; i < groups; ++i)
        if (table.kl[i].size() != steps || table.entropy[i].size() != steps)
            throw std::invalid_argument("write_kl_csv: column length mismatch");
    std::ofstream out = open_out(path);
    out << 't';
    for (int k : table.sweep) out << ",kl_" << k;
    for (int k : table.sweep) out << ",entropy_" << k;
    out << ",entropy_exact\n";
    for (std::size_t t = 0; t < steps; ++t) {
        out << t;
        for (std::size_t i = 0; i < groups; ++i) out << ',' << fmt(table.kl[i][t]);
        for (std::size_t i = 0; i < groups; ++i) out << ',' << fmt(table.entropy[i][t]);
        out << ',' << fmt(table.entropy_exact[t]) << '\n';
    }
    if (!out) throw io_error(path, "write failed");
}

void render_heatmap(const std::vector<Belief>& rows, const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("render_heatmap: no rows");
    const std::size_t n = rows.front().size();
    if (n == 0) throw std::invalid_argument("render_heatmap: empty rows");
    for (const Belief& row : rows)
        if (row.size() != n) throw std::invalid_argument("render_heatmap: ragged rows");
    std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
    out << "P5 " << n << ' ' << rows.size() << " 255\n";
    std::string pixels;
    pixels.reserve(rows.size() * n);
    for (const Belief& row : rows) {
        for (double p : row) {
            long gray = std::lround(240.0 * (1.0 - p));
            if (gray < 0) gray = 0;
            if (gray > 255) gray = 255;
            pixels.push_back(static_cast<char>(static_cast<unsigned char>(gray)));
        }
    }
    out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
    if (!out) throw io_error(path, "write failed");
}

void validate_trace_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    int n = -1;
    int line_no = 0;
    int expect_t = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line);
        if (n < 0) {
            if (f.size() < 9 || (f.size() - 5) % 2 != 0)
                throw io_error(path, "line " + std::to_string(line_no) +
                                         ": expected 5 + 2n fields, got " +
                                         std::to_string(f.size()));
            n = static_cast<int>(f.size() - 5) / 2;
        } else if (f.size() != static_cast<std::size_t>(5 + 2 * n)) {
            throw io_error(path, "line " + std::to_string(line_no) + ": inconsistent column count");
        }
        if (parse_long(path, f[0]) != expect_t)
            throw io_error(path, "line " + std::to_string(line_no) + ": step index not consecutive");
        ++expect_t;
        const long psi = parse_long(path, f[1]);
        if (psi < 0 || psi >= n)
            throw io_error(path, "line " + std::to_string(line_no) + ": cell outside the world");
        const long s = parse_long(path, f[2]);
        if (s != 0 && s != 1)
            throw io_error(path, "line " + std::to_string(line_no) + ": sensation must be 0 or 1");
        const long a = parse_long(path, f[3]);
        if (a != -1 && a != 1)
            throw io_error(path, "line " + std::to_string(line_no) + ": action must be -1 or 1");
        parse_double(path, f[4]);
        std::vector<double> belief(n);
        for (int j = 0; j < n; ++j) belief[j] = parse_double(path, f[5 + j]);
        check_simplex(path, belief, line_no);
        int exact_fields = 0;
        for (int j = 0; j < n; ++j)
            if (!f[5 + n + j].empty()) ++exact_fields;
        if (exact_fields != 0 && exact_fields != n)
            throw io_error(path, "line " + std::to_string(line_no) + ": partial exact row");
        if (exact_fields == n) {
            std::vector<double> exact(n);
            for (int j = 0; j < n; ++j) exact[j] = parse_double(path, f[5 + n + j]);
            check_simplex(path, exact, line_no);
        }
    }
    if (expect_t == 0) throw io_error(path, "no data rows");
}

void validate_profile_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw io_error(path, "missing header");
    const std::vector<std::string> head = split(line);
    if (head.empty() || head[0] != "cell" || head.size() < 3 || (head.size() - 1) % 2 != 0)
        throw io_error(path, "header must be cell,mean_<k>,std_<k>,...");
    for (std::size_t i = 1; i < head.size(); i += 2)
        if (head[i].rfind("mean_", 0) != 0 || head[i + 1].rfind("std_", 0) != 0)
            throw io_error(path, "header must alternate mean_<k>,std_<k> pairs");
    const std::size_t groups = (head.size() - 1) / 2;
    std::vector<double> sums(groups, 0.0);
    int expect_cell = 0;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line);
        if (f.size() != head.size())
            throw io_error(path, "line " + std::to_string(line_no) + ": wrong column count");
        if (parse_long(path, f[0]) != expect_cell)
            throw io_error(path, "line " + std::to_string(line_no) + ": cell index not consecutive");
        ++expect_cell;
        for (std::size_t g = 0; g < groups; ++g) {
            const double mean = parse_double(path, f[1 + 2 * g]);
            const double sd = parse_double(path, f[2 + 2 * g]);
            if (!(mean >= 0.0) || mean > 1.0 + 1e-12)
                throw io_error(path, "line " + std::to_string(line_no) + ": mean outside [0, 1]");
            if (!(sd >= 0.0))
                throw io_error(path, "line " + std::to_string(line_no) + ": negative std");
            sums[g] += mean;
        }
    }
    if (expect_cell == 0) throw io_error(path, "no data rows");
    for (double s : sums)
        if (std::abs(s - 1.0) > 1e-9) throw io_error(path, "mean column does not sum to 1");
}

void validate_kl_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw io_error(path, "missing header");
    const std::vector<std::string> head = split(line);
    if (head.size() < 4 || head[0] != "t" || head.back() != "entropy_exact" ||
        (head.size() - 2) % 2 != 0)
        throw io_error(path, "header must be t,kl_<k>...,entropy_<k>...,entropy_exact");
    const std::size_t groups = (head.size() - 2) / 2;
    for (std::size_t i = 0; i < groups; ++i) {
        if (head[1 + i].rfind("kl_", 0) != 0)
            throw io_error(path, "expected kl_<k> column at position " + std::to_string(1 + i));
        if (head[1 + groups + i].rfind("entropy_", 0) != 0)
            throw io_error(path,
                           "expected entropy_<k> column at position " + std::to_string(1 + groups + i));
    }
    int expect_t = 0;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line);
        if (f.size() != head.size())
            throw io_error(path, "line " + std::to_string(line_no) + ": wrong column count");
        if (parse_long(path, f[0]) != expect_t)
            throw io_error(path, "line " + std::to_string(line_no) + ": step index not consecutive");
        ++expect_t;
        for (std::size_t i = 1; i < f.size(); ++i) {
            const double v = parse_double(path, f[i]);
            if (std::isnan(v))
                throw io_error(path, "line " + std::to_string(line_no) + ": NaN entry");
        }
    }
    if (expect_t == 0) throw io_error(path, "no data rows");
}

} // namespace fea
