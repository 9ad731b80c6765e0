#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace relshock::io {

using json = nlohmann::ordered_json;

// CSV with a header row and full double precision (17 significant digits).
class CsvWriter {
public:
    CsvWriter(std::string path, std::vector<std::string> columns);
    void row(const std::vector<double>& values);
    void close();
    ~CsvWriter();

private:
    std::string path_;
    std::string buffer_;
    std::size_t ncols_ = 0;
    bool open_ = true;
};

void write_json(const std::string& path, const json& j);
void write_text(const std::string& path, const std::string& text);
std::string format_double(double v); // %.17g

// Minimal SVG line-plot emitter: polylines + labels in data coordinates.
class SvgPlot {
public:
    SvgPlot(double x_min, double x_max, double y_min, double y_max, int width = 860,
            int height = 620);
    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& color, double stroke_width = 1.5,
                  bool dashed = false);
    void marker(double x, double y, const std::string& color, double radius = 4.0);
    void label(double x, double y, const std::string& text,
               const std::string& color = "#222222");
    void title(const std::string& text);
    void axes(const std::string& x_name, const std::string& y_name);
    void save(const std::string& path) const;

private:
    double px(double x) const;
    double py(double y) const;
    double x0_, x1_, y0_, y1_;
    int w_, h_;
    std::string body_;
};

} // namespace relshock::io
