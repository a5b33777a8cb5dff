#include "cofuse/config.hpp"

#include "cofuse/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cofuse {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_perfect_square(int v)
{
    if (v < 0)
        return false;
    const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v))));
    return r * r == v;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text)
{
    T value{};
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw config_error("invalid value '" + std::string(text) + "' for key " + std::string(key));
    return value;
}

template <typename T>
std::string format_number(T value)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

} // namespace

int FusionConfig::patch_side() const
{
    return static_cast<int>(std::lround(std::sqrt(static_cast<double>(patch_dim))));
}

void FusionConfig::validate() const
{
    if (patch_dim < 1)
        throw config_error("patch_dim must be >= 1");
    if (!is_perfect_square(patch_dim))
        throw config_error("patch_dim must be a perfect square");
    if (dict_atoms < 1)
        throw config_error("dict_atoms must be >= 1");
    if (outer_iters < 1)
        throw config_error("outer_iters must be >= 1");
    if (sparsity_T < 1)
        throw config_error("sparsity_T must be >= 1");
    if (sparsity_T > dict_atoms)
        throw config_error("sparsity_T must be <= dict_atoms");
    if (sparsity_T > patch_dim)
        throw config_error("sparsity_T must be <= patch_dim");
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw config_error("rho must be > 0");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw config_error("epsilon must be > 0");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw config_error("delta must be > 0");
    if (stride < 1)
        throw config_error("stride must be >= 1");
    if (stride > patch_side())
        throw config_error("stride must be <= the patch side");
}

FusionConfig load_config(std::string_view source)
{
    FusionConfig cfg;
    std::set<std::string, std::less<>> seen;

    std::size_t line_no = 0;
    while (!source.empty()) {
        ++line_no;
        const auto nl = source.find('\n');
        std::string_view line = trim(source.substr(0, nl));
        source = nl == std::string_view::npos ? std::string_view{} : source.substr(nl + 1);

        if (line.empty() || line.front() == '#')
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw config_error("line " + std::to_string(line_no) + ": expected key=value");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        if (!seen.insert(std::string(key)).second)
            throw config_error("duplicate key " + std::string(key));

        if (key == "patch_dim")
            cfg.patch_dim = parse_number<int>(key, value);
        else if (key == "dict_atoms")
            cfg.dict_atoms = parse_number<int>(key, value);
        else if (key == "outer_iters")
            cfg.outer_iters = parse_number<int>(key, value);
        else if (key == "sparsity_T")
            cfg.sparsity_T = parse_number<int>(key, value);
        else if (key == "rho")
            cfg.rho = parse_number<double>(key, value);
        else if (key == "epsilon")
            cfg.epsilon = parse_number<double>(key, value);
        else if (key == "delta")
            cfg.delta = parse_number<double>(key, value);
        else if (key == "stride")
            cfg.stride = parse_number<int>(key, value);
        else
            throw config_error("unknown key " + std::string(key));
    }

    cfg.validate();
    return cfg;
}

FusionConfig load_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return load_config(text.str());
}

std::string to_config_text(const FusionConfig& cfg)
{
    std::string out;
    out += "patch_dim=" + format_number(cfg.patch_dim) + "\n";
    out += "dict_atoms=" + format_number(cfg.dict_atoms) + "\n";
    out += "outer_iters=" + format_number(cfg.outer_iters) + "\n";
    out += "sparsity_T=" + format_number(cfg.sparsity_T) + "\n";
    out += "rho=" + format_number(cfg.rho) + "\n";
    out += "epsilon=" + format_number(cfg.epsilon) + "\n";
    out += "delta=" + format_number(cfg.delta) + "\n";
    out += "stride=" + format_number(cfg.stride) + "\n";
    return out;
}

} // namespace cofuse
