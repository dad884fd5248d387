#ifndef DFREUD_REPORT_HPP
#define DFREUD_REPORT_HPP

// Verification report: named checks with a measured value and a threshold, serialised as JSON.

#include <json.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace dfreud {

struct Check {
    std::string id;
    std::string description;
    double measured = std::numeric_limits<double>::quiet_NaN();
    double threshold = 0.0;
    bool pass = false;

    /// pass = measured <= threshold; a NaN measurement fails.
    static Check make(std::string id, std::string description, double measured, double threshold)
    {
        Check c{std::move(id), std::move(description), measured, threshold, false};
        c.pass = measured <= threshold;
        return c;
    }
};

struct VerificationReport {
    std::string suite;
    std::vector<Check> checks;
    nlohmann::json params_grid = nlohmann::json::array();
    int digits = 0;
    double wall_time = 0.0;

    bool all_pass() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }

    void append(const VerificationReport& other)
    {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }
};

namespace detail {

// JSON has no NaN or infinity; they travel as strings.
inline nlohmann::json number_to_json(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

inline double number_from_json(const nlohmann::json& j)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();
    }
    return j.get<double>();
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const Check& c)
{
    j = nlohmann::json{{"id", c.id},
                       {"description", c.description},
                       {"measured", detail::number_to_json(c.measured)},
                       {"threshold", detail::number_to_json(c.threshold)},
                       {"pass", c.pass}};
}

inline void from_json(const nlohmann::json& j, Check& c)
{
    j.at("id").get_to(c.id);
    j.at("description").get_to(c.description);
    c.measured = detail::number_from_json(j.at("measured"));
    c.threshold = detail::number_from_json(j.at("threshold"));
    j.at("pass").get_to(c.pass);
}

inline void to_json(nlohmann::json& j, const VerificationReport& r)
{
    j = nlohmann::json{{"suite", r.suite},
                       {"checks", r.checks},
                       {"params_grid", r.params_grid},
                       {"digits", r.digits},
                       {"wall_time", r.wall_time}};
}

inline void from_json(const nlohmann::json& j, VerificationReport& r)
{
    j.at("suite").get_to(r.suite);
    j.at("checks").get_to(r.checks);
    r.params_grid = j.at("params_grid");
    j.at("digits").get_to(r.digits);
    j.at("wall_time").get_to(r.wall_time);
}

}  // namespace dfreud

#endif  // DFREUD_REPORT_HPP
