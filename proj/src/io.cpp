#include "relshock/io.hpp"

#include <cstdio>
#include <fstream>

#include "relshock/errors.hpp"

namespace relshock::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::string path, std::vector<std::string> columns)
    : path_(std::move(path)), ncols_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += columns[i];
    }
    buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != ncols_)
        fail(ErrorKind::io, "CSV row arity does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += format_double(values[i]);
    }
    buffer_ += '\n';
}

void CsvWriter::close() {
    if (!open_) return;
    open_ = false;
    write_text(path_, buffer_);
}

CsvWriter::~CsvWriter() {
    try {
        close();
    } catch (...) {
    }
}

void write_json(const std::string& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot open output file: " + path);
    out << text;
    if (!out) fail(ErrorKind::io, "write failed: " + path);
}

SvgPlot::SvgPlot(double x_min, double x_max, double y_min, double y_max, int width,
                 int height)
    : x0_(x_min), x1_(x_max), y0_(y_min), y1_(y_max), w_(width), h_(height) {}

double SvgPlot::px(double x) const {
    return 60.0 + (x - x0_) / (x1_ - x0_) * (w_ - 90.0);
}

double SvgPlot::py(double y) const {
    return (h_ - 50.0) - (y - y0_) / (y1_ - y0_) * (h_ - 90.0);
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& pts,
                       const std::string& color, double stroke_width, bool dashed) {
    std::string d = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\""
                  + format_double(stroke_width) + "\"";
    if (dashed) d += " stroke-dasharray=\"6,4\"";
    d += " points=\"";
    char buf[64];
    for (const auto& [x, y] : pts) {
        std::snprintf(buf, sizeof(buf), "%.6g,%.6g ", px(x), py(y));
        d += buf;
    }
    d += "\"/>\n";
    body_ += d;
}

void SvgPlot::marker(double x, double y, const std::string& color, double radius) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.6g\" cy=\"%.6g\" r=\"%.3g\" fill=\"%s\"/>\n",
                  px(x), py(y), radius, color.c_str());
    body_ += buf;
}

void SvgPlot::label(double x, double y, const std::string& text, const std::string& color) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "<text x=\"%.6g\" y=\"%.6g\"", px(x), py(y));
    body_ += buf;
    body_ += " font-size=\"13\" font-family=\"sans-serif\" fill=\"" + color + "\">"
           + text + "</text>\n";
}

void SvgPlot::title(const std::string& text) {
    body_ += "<text x=\"" + format_double(w_ / 2.0)
           + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
             "font-family=\"sans-serif\" fill=\"#111111\">"
           + text + "</text>\n";
}

void SvgPlot::axes(const std::string& x_name, const std::string& y_name) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.6g\" y1=\"%.6g\" x2=\"%.6g\" y2=\"%.6g\" "
                  "stroke=\"#555555\"/>\n",
                  px(x0_), py(y0_), px(x1_), py(y0_));
    body_ += buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.6g\" y1=\"%.6g\" x2=\"%.6g\" y2=\"%.6g\" "
                  "stroke=\"#555555\"/>\n",
                  px(x0_), py(y0_), px(x0_), py(y1_));
    body_ += buf;
    label(x1_, y0_, x_name, "#555555");
    label(x0_, y1_, y_name, "#555555");
}

void SvgPlot::save(const std::string& path) const {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
                    + std::to_string(w_) + "\" height=\"" + std::to_string(h_)
                    + "\" viewBox=\"0 0 " + std::to_string(w_) + " "
                    + std::to_string(h_) + "\">\n<rect width=\"100%\" height=\"100%\" "
                      "fill=\"white\"/>\n";
    out += body_;
    out += "</svg>\n";
    write_text(path, out);
}

} // namespace relshock::io
