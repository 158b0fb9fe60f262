#pragma once

#include <string>
#include <vector>

namespace wincs {

// Minimal standalone SVG line plot; no renderer dependency.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void add_series(std::string name, std::vector<double> xs, std::vector<double> ys);

    std::string render() const;
    void write(const std::string& path) const;  // throws IoError

private:
    struct Series {
        std::string name;
        std::vector<double> xs;
        std::vector<double> ys;
    };

    std::string title_;
    std::string x_label_;
    std::string y_label_;
    std::vector<Series> series_;
};

}  // namespace wincs
