#include "sos_cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "sos/error.hpp"

namespace sos::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw InputError("config key '" + key + "': not a number: " + v);
    }
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long d = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw InputError("config key '" + key + "': not an integer: " + v);
    }
}

template <class T, class F>
std::string join(const std::vector<T>& v, F f) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + f(v[i]);
    return s;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ModelParams ExperimentConfig::model() const {
    ModelParams p;
    p.beta = beta;
    p.alpha = alpha;
    p.h = h;
    p.bc = bc;
    p.height_window = window ? *window : default_window(bc);
    if (contour_length_cap > 0) p.contour_length_cap = contour_length_cap;
    p.validate();
    return p;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
    auto d = [](double v) { return format_double(v); };
    auto i = [](long long v) { return std::to_string(v); };
    auto s = [](const std::string& v) { return v; };
    return {
        {"command", command},
        {"experiment", experiment},
        {"beta", d(beta)},
        {"alpha", d(alpha)},
        {"h", d(h)},
        {"bc", i(bc)},
        {"window", window ? i(window->lo) + "," + i(window->hi) : "auto"},
        {"contour_length_cap", i(contour_length_cap)},
        {"disorder", disorder.to_string()},
        {"width", i(width)},
        {"height", i(height)},
        {"h_grid", join(h_grid, d)},
        {"n_grid", join(n_grid, i)},
        {"beta_grid", join(beta_grid, d)},
        {"sides", join(sides, i)},
        {"replicas", i(replicas)},
        {"seed", std::to_string(seed)},
        {"sweeps", std::to_string(sweeps)},
        {"burn_in", std::to_string(burn_in)},
        {"threads", std::to_string(threads)},
        {"input", input},
        {"out", out},
        {"checkpoint", checkpoint},
        {"mcmc_mode", mcmc_mode},
        {"tasks", join(tasks, s)},
        {"batch", i(batch)},
        {"L", i(L)},
        {"M", i(M)},
        {"theta1", d(theta1)},
        {"tolerance", d(tolerance)},
    };
}

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    auto doubles = [&] {
        std::vector<double> out;
        for (const auto& s : split(v, ',')) out.push_back(to_double(key, s));
        return out;
    };
    auto ints = [&] {
        std::vector<int> out;
        for (const auto& s : split(v, ',')) out.push_back(static_cast<int>(to_int(key, s)));
        return out;
    };
    auto u64 = [&] {
        try {
            std::size_t used = 0;
            if (v.empty() || v[0] == '-') throw std::invalid_argument(v);
            const unsigned long long x = std::stoull(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return static_cast<std::uint64_t>(x);
        } catch (const std::exception&) {
            throw InputError("config key '" + key + "': not a nonnegative integer: " + v);
        }
    };
    if (key == "command") command = v;
    else if (key == "experiment") experiment = v;
    else if (key == "beta") beta = to_double(key, v);
    else if (key == "alpha") alpha = to_double(key, v);
    else if (key == "h") h = to_double(key, v);
    else if (key == "bc") bc = static_cast<int>(to_int(key, v));
    else if (key == "window") {
        if (v == "auto" || v.empty()) {
            window.reset();
        } else {
            const auto w = ints();
            if (w.size() != 2 || w[0] > w[1]) throw InputError("window must be 'lo,hi' or 'auto'");
            window = HeightWindow{w[0], w[1]};
        }
    } else if (key == "contour_length_cap") contour_length_cap = static_cast<int>(to_int(key, v));
    else if (key == "disorder") disorder = DisorderSpec::parse(v);
    else if (key == "width") width = static_cast<int>(to_int(key, v));
    else if (key == "height") height = static_cast<int>(to_int(key, v));
    else if (key == "h_grid") h_grid = doubles();
    else if (key == "n_grid") n_grid = ints();
    else if (key == "beta_grid") beta_grid = doubles();
    else if (key == "sides") sides = ints();
    else if (key == "replicas") replicas = static_cast<int>(to_int(key, v));
    else if (key == "seed") seed = u64();
    else if (key == "sweeps") sweeps = u64();
    else if (key == "burn_in") burn_in = u64();
    else if (key == "threads") threads = static_cast<unsigned>(u64());
    else if (key == "input") input = v;
    else if (key == "out") out = v;
    else if (key == "checkpoint") checkpoint = v;
    else if (key == "mcmc_mode") mcmc_mode = v;
    else if (key == "tasks") tasks = split(v, ',');
    else if (key == "batch") batch = static_cast<int>(to_int(key, v));
    else if (key == "L") L = static_cast<int>(to_int(key, v));
    else if (key == "M") M = static_cast<int>(to_int(key, v));
    else if (key == "theta1") theta1 = to_double(key, v);
    else if (key == "tolerance") tolerance = to_double(key, v);
    else throw InputError("unknown config key: " + key);
}

std::string serialize(const ExperimentConfig& c) {
    std::string s;
    for (const auto& [k, v] : c.entries()) s += k + " = " + v + "\n";
    return s;
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
    std::vector<std::string> lines;
    bool header = false;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("#config:", 0) == 0) {
            if (!header) lines.clear();
            header = true;
            lines.push_back(line.substr(8));
        } else if (!header) {
            lines.push_back(line);
        }
    }
    ExperimentConfig c = std::move(base);
    int n = 0;
    for (const auto& raw : lines) {
        ++n;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", n, 1);
        c.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return c;
}

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
    std::istringstream is(text);
    return parse_config(is, std::move(base));
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        const auto j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded() || !j.contains("config") || !j["config"].is_object())
            throw InputError("JSON config needs a \"config\" object: " + path);
        ExperimentConfig c = std::move(base);
        for (const auto& [k, v] : j["config"].items()) c.set(k, v.get<std::string>());
        return c;
    }
    return parse_config_text(text, std::move(base));
}

}  // namespace sos::cli
