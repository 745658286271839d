#include "aqg/plot.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

namespace aqg::plot {

namespace {

// 5x7 bitmap glyphs, one row per byte, MSB = leftmost column.
const std::map<char, std::array<unsigned char, 7>>& glyphs() {
    static const std::map<char, std::array<unsigned char, 7>> table = {
        {'0', {0b01110, 0b10001, 0b10011, 0b10101, 0b11001, 0b10001, 0b01110}},
        {'1', {0b00100, 0b01100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110}},
        {'2', {0b01110, 0b10001, 0b00001, 0b00010, 0b00100, 0b01000, 0b11111}},
        {'3', {0b11111, 0b00010, 0b00100, 0b00010, 0b00001, 0b10001, 0b01110}},
        {'4', {0b00010, 0b00110, 0b01010, 0b10010, 0b11111, 0b00010, 0b00010}},
        {'5', {0b11111, 0b10000, 0b11110, 0b00001, 0b00001, 0b10001, 0b01110}},
        {'6', {0b00110, 0b01000, 0b10000, 0b11110, 0b10001, 0b10001, 0b01110}},
        {'7', {0b11111, 0b00001, 0b00010, 0b00100, 0b01000, 0b01000, 0b01000}},
        {'8', {0b01110, 0b10001, 0b10001, 0b01110, 0b10001, 0b10001, 0b01110}},
        {'9', {0b01110, 0b10001, 0b10001, 0b01111, 0b00001, 0b00010, 0b01100}},
        {'-', {0b00000, 0b00000, 0b00000, 0b11111, 0b00000, 0b00000, 0b00000}},
        {'+', {0b00000, 0b00100, 0b00100, 0b11111, 0b00100, 0b00100, 0b00000}},
        {'.', {0b00000, 0b00000, 0b00000, 0b00000, 0b00000, 0b01100, 0b01100}},
        {'(', {0b00010, 0b00100, 0b01000, 0b01000, 0b01000, 0b00100, 0b00010}},
        {')', {0b01000, 0b00100, 0b00010, 0b00010, 0b00010, 0b00100, 0b01000}},
        {'=', {0b00000, 0b00000, 0b11111, 0b00000, 0b11111, 0b00000, 0b00000}},
        {'/', {0b00001, 0b00010, 0b00100, 0b00100, 0b01000, 0b10000, 0b10000}},
        {'^', {0b00100, 0b01010, 0b10001, 0b00000, 0b00000, 0b00000, 0b00000}},
        {':', {0b00000, 0b01100, 0b01100, 0b00000, 0b01100, 0b01100, 0b00000}},
        {'A', {0b01110, 0b10001, 0b10001, 0b11111, 0b10001, 0b10001, 0b10001}},
        {'B', {0b11110, 0b10001, 0b10001, 0b11110, 0b10001, 0b10001, 0b11110}},
        {'C', {0b01110, 0b10001, 0b10000, 0b10000, 0b10000, 0b10001, 0b01110}},
        {'D', {0b11100, 0b10010, 0b10001, 0b10001, 0b10001, 0b10010, 0b11100}},
        {'E', {0b11111, 0b10000, 0b10000, 0b11110, 0b10000, 0b10000, 0b11111}},
        {'F', {0b11111, 0b10000, 0b10000, 0b11110, 0b10000, 0b10000, 0b10000}},
        {'G', {0b01110, 0b10001, 0b10000, 0b10111, 0b10001, 0b10001, 0b01111}},
        {'H', {0b10001, 0b10001, 0b10001, 0b11111, 0b10001, 0b10001, 0b10001}},
        {'I', {0b01110, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110}},
        {'J', {0b00111, 0b00010, 0b00010, 0b00010, 0b00010, 0b10010, 0b01100}},
        {'K', {0b10001, 0b10010, 0b10100, 0b11000, 0b10100, 0b10010, 0b10001}},
        {'L', {0b10000, 0b10000, 0b10000, 0b10000, 0b10000, 0b10000, 0b11111}},
        {'M', {0b10001, 0b11011, 0b10101, 0b10101, 0b10001, 0b10001, 0b10001}},
        {'N', {0b10001, 0b11001, 0b10101, 0b10011, 0b10001, 0b10001, 0b10001}},
        {'O', {0b01110, 0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b01110}},
        {'P', {0b11110, 0b10001, 0b10001, 0b11110, 0b10000, 0b10000, 0b10000}},
        {'Q', {0b01110, 0b10001, 0b10001, 0b10001, 0b10101, 0b10010, 0b01101}},
        {'R', {0b11110, 0b10001, 0b10001, 0b11110, 0b10100, 0b10010, 0b10001}},
        {'S', {0b01111, 0b10000, 0b10000, 0b01110, 0b00001, 0b00001, 0b11110}},
        {'T', {0b11111, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100}},
        {'U', {0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b01110}},
        {'V', {0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b01010, 0b00100}},
        {'W', {0b10001, 0b10001, 0b10001, 0b10101, 0b10101, 0b10101, 0b01010}},
        {'X', {0b10001, 0b10001, 0b01010, 0b00100, 0b01010, 0b10001, 0b10001}},
        {'Y', {0b10001, 0b10001, 0b01010, 0b00100, 0b00100, 0b00100, 0b00100}},
        {'Z', {0b11111, 0b00001, 0b00010, 0b00100, 0b01000, 0b10000, 0b11111}},
    };
    return table;
}

class Canvas {
  public:
    Canvas(int w, int h) : w_(w), h_(h), pix_(static_cast<std::size_t>(w) * h * 3, 255) {}

    int width() const { return w_; }
    int height() const { return h_; }

    void set(int x, int y, Color c) {
        if (x < 0 || x >= w_ || y < 0 || y >= h_) return;
        const std::size_t i = (static_cast<std::size_t>(y) * w_ + x) * 3;
        pix_[i] = c[0];
        pix_[i + 1] = c[1];
        pix_[i + 2] = c[2];
    }

    void line(int x0, int y0, int x1, int y1, Color c) {
        const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
        const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
        int err = dx + dy;
        while (true) {
            set(x0, y0, c);
            if (x0 == x1 && y0 == y1) break;
            const int e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x0 += sx;
            }
            if (e2 <= dx) {
                err += dx;
                y0 += sy;
            }
        }
    }

    void thick_line(int x0, int y0, int x1, int y1, Color c) {
        line(x0, y0, x1, y1, c);
        line(x0 + 1, y0, x1 + 1, y1, c);
        line(x0, y0 + 1, x1, y1 + 1, c);
    }

    void text(int x, int y, const std::string& s, Color c, int scale = 1) {
        int cx = x;
        for (char raw : s) {
            const char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
            auto it = glyphs().find(ch);
            if (it != glyphs().end()) {
                for (int row = 0; row < 7; ++row)
                    for (int col = 0; col < 5; ++col)
                        if (it->second[row] & (1 << (4 - col)))
                            for (int sy = 0; sy < scale; ++sy)
                                for (int sx = 0; sx < scale; ++sx)
                                    set(cx + col * scale + sx, y + row * scale + sy, c);
            }
            cx += 6 * scale;
        }
    }

    static int text_width(const std::string& s, int scale = 1) {
        return static_cast<int>(s.size()) * 6 * scale;
    }

    void write_png(const std::filesystem::path& path) const {
        FILE* fp = std::fopen(path.string().c_str(), "wb");
        if (!fp) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        png_infop info = png ? png_create_info_struct(png) : nullptr;
        if (!png || !info || setjmp(png_jmpbuf(png))) {
            if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
            std::fclose(fp);
            throw std::runtime_error("png encoding failed for '" + path.string() + "'");
        }
        png_init_io(png, fp);
        png_set_IHDR(png, info, w_, h_, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                     PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        for (int y = 0; y < h_; ++y)
            png_write_row(png, const_cast<png_bytep>(pix_.data() + static_cast<std::size_t>(y) * w_ * 3));
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
    }

  private:
    int w_, h_;
    std::vector<unsigned char> pix_;
};

constexpr Color kBlack{0, 0, 0};
constexpr Color kGrey{200, 200, 200};
const std::vector<Color> kPalette = {
    {31, 119, 180}, {255, 127, 14}, {44, 160, 44}, {214, 39, 40}, {148, 103, 189}};

std::string tick_label(double v) {
    char buf[32];
    const double a = std::abs(v);
    if (v == 0.0)
        std::snprintf(buf, sizeof(buf), "0");
    else if (a >= 1e4 || a < 1e-3)
        std::snprintf(buf, sizeof(buf), "%.0e", v);
    else
        std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// Round the range out to "nice" tick positions.
std::vector<double> linear_ticks(double lo, double hi, int target = 6) {
    if (!(hi > lo)) return {lo};
    const double span = hi - lo;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> ticks;
    for (double v = std::ceil(lo / step) * step; v <= hi + 0.5 * step; v += step)
        ticks.push_back(v);
    return ticks;
}

std::vector<double> decade_ticks(double lo, double hi) {
    std::vector<double> ticks;
    const int a = static_cast<int>(std::ceil(std::log10(lo) - 1e-12));
    const int b = static_cast<int>(std::floor(std::log10(hi) + 1e-12));
    int stride = std::max(1, (b - a) / 8);
    for (int d = a; d <= b; d += stride) ticks.push_back(std::pow(10.0, d));
    return ticks;
}

}  // namespace

void render_line_chart(const std::filesystem::path& path, const std::vector<Curve>& curves,
                       const ChartOptions& opts) {
    const int W = opts.width, H = opts.height;
    const int ml = 78, mr = 24, mt = 34, mb = 52;
    Canvas cv(W, H);

    // data range
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            const double y = c.y[i];
            if (opts.log_y && !(y > 0.0)) continue;
            xmin = std::min(xmin, c.x[i]);
            xmax = std::max(xmax, c.x[i]);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmax > xmin)) {
        xmin = 0.0;
        xmax = 1.0;
    }
    if (!(ymax > ymin)) {
        ymin = opts.log_y ? 0.1 : 0.0;
        ymax = 1.0;
    }
    if (opts.log_y) {
        ymin = std::max(ymin, 1e-300);
        if (ymax / ymin < 10.0) ymax = ymin * 10.0;
    } else {
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }

    auto px = [&](double x) {
        return ml + static_cast<int>((x - xmin) / (xmax - xmin) * (W - ml - mr));
    };
    auto py = [&](double y) {
        const double f = opts.log_y ? (std::log(y) - std::log(ymin)) / (std::log(ymax) - std::log(ymin))
                                    : (y - ymin) / (ymax - ymin);
        return H - mb - static_cast<int>(f * (H - mt - mb));
    };

    // frame, grid, ticks
    for (double t : linear_ticks(xmin, xmax)) {
        const int x = px(t);
        cv.line(x, mt, x, H - mb, kGrey);
        const std::string lab = tick_label(t);
        cv.text(x - Canvas::text_width(lab) / 2, H - mb + 8, lab, kBlack);
    }
    const std::vector<double> yticks =
        opts.log_y ? decade_ticks(ymin, ymax) : linear_ticks(ymin, ymax);
    for (double t : yticks) {
        const int y = py(t);
        cv.line(ml, y, W - mr, y, kGrey);
        const std::string lab = tick_label(t);
        cv.text(ml - 6 - Canvas::text_width(lab), y - 3, lab, kBlack);
    }
    cv.line(ml, mt, ml, H - mb, kBlack);
    cv.line(ml, H - mb, W - mr, H - mb, kBlack);

    // curves
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const Color col = kPalette[ci % kPalette.size()];
        const auto& c = curves[ci];
        bool have_prev = false;
        int px0 = 0, py0 = 0;
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            if (opts.log_y && !(c.y[i] > 0.0)) {
                have_prev = false;
                continue;
            }
            const int x = px(c.x[i]), y = py(c.y[i]);
            if (have_prev) cv.thick_line(px0, py0, x, y, col);
            px0 = x;
            py0 = y;
            have_prev = true;
        }
    }

    // legend, top right
    int ly = mt + 8;
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const Color col = kPalette[ci % kPalette.size()];
        const int lx = W - mr - 150;
        cv.thick_line(lx, ly + 3, lx + 24, ly + 3, col);
        cv.text(lx + 30, ly, curves[ci].label, kBlack);
        ly += 14;
    }

    cv.text(ml, mt - 16, opts.title, kBlack);
    cv.text((W - Canvas::text_width(opts.xlabel)) / 2, H - 16, opts.xlabel, kBlack);
    cv.text(6, mt - 16, opts.ylabel, kBlack);
    cv.write_png(path);
}

void render_heatmap(const std::filesystem::path& path, const RealField& f,
                    const std::string& title) {
    const int n1 = f.grid.n1, n2 = f.grid.n2;
    const int cell = std::max(1, 512 / std::max(n1, n2));
    const int mt = 26;
    const int W = n1 * cell, H = n2 * cell + mt;
    Canvas cv(W, H);

    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    if (m == 0.0) m = 1.0;

    for (int i1 = 0; i1 < n1; ++i1) {
        for (int i2 = 0; i2 < n2; ++i2) {
            const double u = f(i1, i2) / m;  // [-1, 1]
            Color c;
            if (u >= 0.0) {
                const double w = 1.0 - u;
                c = {255, static_cast<unsigned char>(255 * w), static_cast<unsigned char>(255 * w)};
            } else {
                const double w = 1.0 + u;
                c = {static_cast<unsigned char>(255 * w), static_cast<unsigned char>(255 * w), 255};
            }
            for (int sy = 0; sy < cell; ++sy)
                for (int sx = 0; sx < cell; ++sx)
                    cv.set(i1 * cell + sx, mt + (n2 - 1 - i2) * cell + sy, c);
        }
    }
    cv.text(8, 8, title, kBlack);
    cv.write_png(path);
}

}  // namespace aqg::plot
