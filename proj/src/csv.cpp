#include "fas/csv.hpp"

#include "fas/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fas::csv {

namespace {

std::string format_with(const char* fmt, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

bool round_trips(const std::string& s, double v) {
    return std::strtod(s.c_str(), nullptr) == v;
}

std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line;
}

} // namespace

std::string format_double(double v) {
    for (const char* fmt : {"%.15g", "%.16g"}) {
        std::string s = format_with(fmt, v);
        if (round_trips(s, v)) return s;
    }
    return format_with("%.17g", v);
}

std::string format_double_sci(double v) {
    for (const char* fmt : {"%.15e", "%.16e"}) {
        std::string s = format_with(fmt, v);
        if (round_trips(s, v)) return s;
    }
    return format_with("%.17e", v);
}

void write_table(const std::filesystem::path& path, const Table& table) {
    Writer w(path);
    for (const auto& c : table.comments) w.comment(c);
    if (!table.header.empty()) w.header(table.header);
    for (const auto& r : table.rows) w.row(r);
    w.close();
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path.string());

    Table table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() == '#') {
            std::size_t start = 1;
            if (start < line.size() && line[start] == ' ') ++start;
            table.comments.push_back(line.substr(start));
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(line);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (line.empty()) cells.clear();
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (!header_seen) {
            table.header = cells;
            header_seen = true;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    if (in.bad()) throw io_error("read failure: " + path.string());
    return table;
}

Writer::Writer(const std::filesystem::path& path) : path_(path) {}

Writer::~Writer() {
    if (!closed_) {
        try {
            close();
        } catch (...) {
            // Destructor swallows; callers that care invoke close() directly.
        }
    }
}

void Writer::comment(const std::string& line) {
    buffer_ += "# ";
    buffer_ += line;
    buffer_ += '\n';
}

void Writer::header(const std::vector<std::string>& names) {
    buffer_ += join(names);
    buffer_ += '\n';
}

void Writer::row(const std::vector<std::string>& cells) {
    buffer_ += join(cells);
    buffer_ += '\n';
}

void Writer::close() {
    if (closed_) return;
    closed_ = true;
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open for writing: " + path_.string());
    out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    out.flush();
    if (!out) throw io_error("write failure: " + path_.string());
}

} // namespace fas::csv
