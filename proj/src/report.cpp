#include "cloneblame/report.hpp"

#include <json.hpp>

#include <sstream>

#include "cloneblame/errors.hpp"

namespace cloneblame::report {

using nlohmann::json;

namespace {

template <typename T, typename F>
json optional_json(const std::optional<T>& value, F&& convert) {
    return value ? convert(*value) : json(nullptr);
}

json summary_json(const stats::Summary& s) {
    return {{"min", s.min}, {"max", s.max}, {"mean", s.mean}, {"median", s.median}, {"count", s.count}};
}

stats::Summary summary_from(const json& j) {
    stats::Summary s;
    s.min = j.at("min").get<double>();
    s.max = j.at("max").get<double>();
    s.mean = j.at("mean").get<double>();
    s.median = j.at("median").get<double>();
    s.count = j.at("count").get<std::size_t>();
    return s;
}

json regression_json(const stats::RegressionResult& r) {
    return {{"slope", r.slope},
            {"intercept", r.intercept},
            {"r_squared", r.r_squared},
            {"p_value", r.p_value ? json(*r.p_value) : json(nullptr)},
            {"n", r.n}};
}

stats::RegressionResult regression_from(const json& j) {
    stats::RegressionResult r;
    r.slope = j.at("slope").get<double>();
    r.intercept = j.at("intercept").get<double>();
    r.r_squared = j.at("r_squared").get<double>();
    if (!j.at("p_value").is_null()) {
        r.p_value = j.at("p_value").get<double>();
    }
    r.n = j.at("n").get<std::size_t>();
    return r;
}

stats::Direction direction_from(const std::string& s) {
    if (s == "a-greater") {
        return stats::Direction::AGreater;
    }
    if (s == "b-greater") {
        return stats::Direction::BGreater;
    }
    if (s == "equal") {
        return stats::Direction::Equal;
    }
    throw ParseError("unknown test direction '" + s + "'");
}

json comparison_json(const stats::GroupComparison& g) {
    const auto& t = g.test;
    return {{"u1", t.u1},
            {"u2", t.u2},
            {"p_value", t.p_value},
            {"n1", t.n1},
            {"n2", t.n2},
            {"direction", stats::to_string(t.direction)},
            {"exact", t.exact},
            {"single_leader", summary_json(g.single_leader)},
            {"multi_leader", summary_json(g.multi_leader)},
            {"multi_leader_greater", g.multi_leader_greater()}};
}

stats::GroupComparison comparison_from(const json& j) {
    stats::GroupComparison g;
    g.test.u1 = j.at("u1").get<double>();
    g.test.u2 = j.at("u2").get<double>();
    g.test.p_value = j.at("p_value").get<double>();
    g.test.n1 = j.at("n1").get<std::size_t>();
    g.test.n2 = j.at("n2").get<std::size_t>();
    g.test.direction = direction_from(j.at("direction").get<std::string>());
    g.test.exact = j.at("exact").get<bool>();
    g.single_leader = summary_from(j.at("single_leader"));
    g.multi_leader = summary_from(j.at("multi_leader"));
    return g;
}

json metrics_json(const stats::ProjectMetrics& m) {
    json distribution = json::object();
    for (const auto& [leaders, count] : m.leader_distribution) {
        distribution[std::to_string(leaders)] = count;
    }
    return {
        {"total_lines", m.total_lines},
        {"clone_lines", m.clone_lines},
        {"nonclone_lines", m.nonclone_lines},
        {"clone_ratio", m.clone_ratio},
        {"nonclone_ratio", m.nonclone_ratio},
        {"clone_to_nonclone_ratio", m.clone_to_nonclone_ratio},
        {"clone_set_count", m.clone_set_count},
        {"clone_length", optional_json(m.clone_length, summary_json)},
        {"set_size", optional_json(m.set_size, summary_json)},
        {"authors_total", m.authors_total},
        {"authors_clone", m.authors_clone},
        {"authors_nonclone", m.authors_nonclone},
        {"regression", optional_json(m.regression, regression_json)},
        {"single_leader_count", m.single_leader_count},
        {"multi_leader_count", m.multi_leader_count},
        {"single_leader_ratio", m.single_leader_ratio},
        {"multi_leader_ratio", m.multi_leader_ratio},
        {"purely_single_author_count", m.purely_single_author_count},
        {"purely_single_author_ratio", m.purely_single_author_ratio},
        {"leader_distribution", distribution},
        {"tied_instances", m.tied_instances},
        {"length_test", optional_json(m.length_test, comparison_json)},
        {"size_test", optional_json(m.size_test, comparison_json)},
        {"flags",
         {{"regression_significant", m.regression_significant()},
          {"multi_leader_longer", m.multi_leader_longer()},
          {"multi_leader_larger", m.multi_leader_larger()}}},
    };
}

template <typename T, typename F>
std::optional<T> optional_from(const json& j, const char* key, F&& convert) {
    const auto& v = j.at(key);
    if (v.is_null()) {
        return std::nullopt;
    }
    return convert(v);
}

stats::ProjectMetrics metrics_from(const json& j) {
    stats::ProjectMetrics m;
    m.total_lines = j.at("total_lines").get<std::uint64_t>();
    m.clone_lines = j.at("clone_lines").get<std::uint64_t>();
    m.nonclone_lines = j.at("nonclone_lines").get<std::uint64_t>();
    m.clone_ratio = j.at("clone_ratio").get<double>();
    m.nonclone_ratio = j.at("nonclone_ratio").get<double>();
    m.clone_to_nonclone_ratio = j.at("clone_to_nonclone_ratio").get<double>();
    m.clone_set_count = j.at("clone_set_count").get<std::uint64_t>();
    m.clone_length = optional_from<stats::Summary>(j, "clone_length", summary_from);
    m.set_size = optional_from<stats::Summary>(j, "set_size", summary_from);
    m.authors_total = j.at("authors_total").get<std::uint64_t>();
    m.authors_clone = j.at("authors_clone").get<std::uint64_t>();
    m.authors_nonclone = j.at("authors_nonclone").get<std::uint64_t>();
    m.regression = optional_from<stats::RegressionResult>(j, "regression", regression_from);
    m.single_leader_count = j.at("single_leader_count").get<std::uint64_t>();
    m.multi_leader_count = j.at("multi_leader_count").get<std::uint64_t>();
    m.single_leader_ratio = j.at("single_leader_ratio").get<double>();
    m.multi_leader_ratio = j.at("multi_leader_ratio").get<double>();
    m.purely_single_author_count = j.at("purely_single_author_count").get<std::uint64_t>();
    m.purely_single_author_ratio = j.at("purely_single_author_ratio").get<double>();
    for (const auto& [key, count] : j.at("leader_distribution").items()) {
        m.leader_distribution[static_cast<std::uint32_t>(std::stoul(key))] = count.get<std::uint32_t>();
    }
    m.tied_instances = j.at("tied_instances").get<std::uint64_t>();
    m.length_test = optional_from<stats::GroupComparison>(j, "length_test", comparison_from);
    m.size_test = optional_from<stats::GroupComparison>(j, "size_test", comparison_from);
    return m;
}

authorship::CloneSetKind kind_from(const std::string& s) {
    if (s == "single-leader") {
        return authorship::CloneSetKind::SingleLeader;
    }
    if (s == "multi-leader") {
        return authorship::CloneSetKind::MultiLeader;
    }
    throw ParseError("unknown clone set kind '" + s + "'");
}

authorship::TiePolicy policy_from(const std::string& s) {
    if (s == "deterministic") {
        return authorship::TiePolicy::Deterministic;
    }
    if (s == "random") {
        return authorship::TiePolicy::Random;
    }
    throw ParseError("unknown tie policy '" + s + "'");
}

}  // namespace

std::string_view tool_version() {
#ifdef CLONE_BLAME_VERSION
    return CLONE_BLAME_VERSION;
#else
    return "0.0.0";
#endif
}

const char* to_string(authorship::TiePolicy policy) {
    return policy == authorship::TiePolicy::Random ? "random" : "deterministic";
}

std::vector<std::string> CloneSetRecord::leaders() const {
    std::vector<std::string> out;
    out.reserve(instances.size());
    for (const auto& i : instances) {
        out.push_back(i.leader);
    }
    return out;
}

std::string to_json(const ProjectReport& r) {
    json sets = json::array();
    for (const auto& s : r.clone_sets) {
        json instances = json::array();
        for (const auto& i : s.instances) {
            instances.push_back({{"file", i.file},
                                 {"begin_line", i.begin_line},
                                 {"end_line", i.end_line},
                                 {"begin_token", i.begin_token},
                                 {"end_token", i.end_token},
                                 {"leader", i.leader},
                                 {"leader_lines", i.leader_lines},
                                 {"distinct_authors", i.distinct_authors},
                                 {"tie", i.tie}});
        }
        sets.push_back({{"id", s.id},
                        {"token_length", s.token_length},
                        {"mean_length_loc", s.mean_length_loc},
                        {"kind", authorship::to_string(s.kind)},
                        {"distinct_leaders", s.distinct_leaders},
                        {"purely_single_author", s.purely_single_author},
                        {"instances", instances}});
    }
    json skipped = json::array();
    for (const auto& s : r.skipped) {
        skipped.push_back({{"path", s.path}, {"reason", s.reason}});
    }
    json authors = json::array();
    for (const auto& a : r.authors) {
        authors.push_back({{"author", a.author}, {"clone_lines", a.clone_lines}, {"nonclone_lines", a.nonclone_lines}});
    }
    const json doc = {
        {"schema", r.schema},
        {"tool_version", r.tool_version},
        {"timestamp", r.timestamp},
        {"repo", r.repo},
        {"head_commit", r.head_commit},
        {"params", {{"min_tokens", r.params.min_tokens}, {"min_rnr", r.params.min_rnr}, {"min_tks", r.params.min_tks}}},
        {"tie_policy", to_string(r.tie_policy)},
        {"seed", r.seed ? json(*r.seed) : json(nullptr)},
        {"files", r.files},
        {"skipped", skipped},
        {"warnings", r.warnings},
        {"metrics", metrics_json(r.metrics)},
        {"clone_sets", sets},
        {"authors", authors},
    };
    return doc.dump(2) + "\n";
}

ProjectReport report_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        ProjectReport r;
        r.schema = j.at("schema").get<std::string>();
        if (r.schema != kSchema) {
            throw ParseError("unsupported report schema '" + r.schema + "'");
        }
        r.tool_version = j.at("tool_version").get<std::string>();
        r.timestamp = j.at("timestamp").get<std::string>();
        r.repo = j.at("repo").get<std::string>();
        r.head_commit = j.at("head_commit").get<std::string>();
        const auto& p = j.at("params");
        r.params.min_tokens = p.at("min_tokens").get<std::uint32_t>();
        r.params.min_rnr = p.at("min_rnr").get<double>();
        r.params.min_tks = p.at("min_tks").get<std::uint32_t>();
        r.tie_policy = policy_from(j.at("tie_policy").get<std::string>());
        if (!j.at("seed").is_null()) {
            r.seed = j.at("seed").get<std::uint64_t>();
        }
        r.files = j.at("files").get<std::vector<std::string>>();
        for (const auto& s : j.at("skipped")) {
            r.skipped.push_back({s.at("path").get<std::string>(), s.at("reason").get<std::string>()});
        }
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        r.metrics = metrics_from(j.at("metrics"));
        for (const auto& s : j.at("clone_sets")) {
            CloneSetRecord set;
            set.id = s.at("id").get<std::uint32_t>();
            set.token_length = s.at("token_length").get<std::uint32_t>();
            set.mean_length_loc = s.at("mean_length_loc").get<double>();
            set.kind = kind_from(s.at("kind").get<std::string>());
            set.distinct_leaders = s.at("distinct_leaders").get<std::uint32_t>();
            set.purely_single_author = s.at("purely_single_author").get<bool>();
            for (const auto& i : s.at("instances")) {
                InstanceRecord inst;
                inst.file = i.at("file").get<std::string>();
                inst.begin_line = i.at("begin_line").get<std::uint32_t>();
                inst.end_line = i.at("end_line").get<std::uint32_t>();
                inst.begin_token = i.at("begin_token").get<std::uint32_t>();
                inst.end_token = i.at("end_token").get<std::uint32_t>();
                inst.leader = i.at("leader").get<std::string>();
                inst.leader_lines = i.at("leader_lines").get<std::uint32_t>();
                inst.distinct_authors = i.at("distinct_authors").get<std::uint32_t>();
                inst.tie = i.at("tie").get<bool>();
                set.instances.push_back(std::move(inst));
            }
            r.clone_sets.push_back(std::move(set));
        }
        for (const auto& a : j.at("authors")) {
            r.authors.push_back({a.at("author").get<std::string>(), a.at("clone_lines").get<std::uint64_t>(),
                                 a.at("nonclone_lines").get<std::uint64_t>()});
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(value);
    }
    std::string out = "\"";
    for (const char c : value) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string clone_sets_csv(const ProjectReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "set_id,size,mean_length_loc,token_length,kind,leaders\n";
    for (const auto& s : report.clone_sets) {
        std::string leaders;
        for (const auto& i : s.instances) {
            if (!leaders.empty()) {
                leaders += ';';
            }
            leaders += i.leader;
        }
        out << s.id << ',' << s.instances.size() << ',' << s.mean_length_loc << ',' << s.token_length << ','
            << authorship::to_string(s.kind) << ',' << csv_field(leaders) << '\n';
    }
    return out.str();
}

std::string authors_csv(const ProjectReport& report) {
    std::ostringstream out;
    out << "author,clone_lines,nonclone_lines\n";
    for (const auto& a : report.authors) {
        out << csv_field(a.author) << ',' << a.clone_lines << ',' << a.nonclone_lines << '\n';
    }
    return out.str();
}

}  // namespace cloneblame::report
