// SPDX-License-Identifier: Apache-2.0

#include "zgp/model_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace zgp {

namespace {

    using nlohmann::json;

    std::string hex_double(double v)
    {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%a", v);
        return buf;
    }

    double parse_hex_double(const std::string& s)
    {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size()) {
            throw std::runtime_error("model file: bad float literal '" + s + "'");
        }
        return v;
    }

    json vector_to_json(const Eigen::VectorXd& v)
    {
        json arr = json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            arr.push_back(hex_double(v[i]));
        }
        return arr;
    }

    Eigen::VectorXd vector_from_json(const json& arr)
    {
        Eigen::VectorXd v(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i) {
            v[static_cast<Eigen::Index>(i)] = parse_hex_double(arr[i].get<std::string>());
        }
        return v;
    }

    json config_to_json(const RunConfig& c)
    {
        json ops = json::array();
        for (Op op : c.operators) {
            ops.push_back(std::string(op_name(op)));
        }
        return {
            { "num_elements", c.num_elements },
            { "num_stages", c.num_stages },
            { "const_min", c.const_min },
            { "const_max", c.const_max },
            { "const_prob", c.const_prob },
            { "tournament_size", c.tournament_size },
            { "crossover_rate", c.crossover_rate },
            { "mutation_divisor", c.mutation_divisor },
            { "mutation_regime_threshold", c.mutation_regime_threshold },
            { "population_size", c.population_size },
            { "max_generations", c.max_generations },
            { "stagnation_window", c.stagnation_window },
            { "stagnation_threshold", c.stagnation_threshold },
            { "operators", ops },
            { "seed", c.seed },
            { "validation_fraction", c.validation_fraction },
        };
    }

    RunConfig config_from_json(const json& j)
    {
        RunConfig c;
        c.num_elements = j.at("num_elements").get<int>();
        c.num_stages = j.at("num_stages").get<int>();
        c.const_min = j.at("const_min").get<double>();
        c.const_max = j.at("const_max").get<double>();
        c.const_prob = j.at("const_prob").get<double>();
        c.tournament_size = j.at("tournament_size").get<int>();
        c.crossover_rate = j.at("crossover_rate").get<double>();
        c.mutation_divisor = j.at("mutation_divisor").get<int>();
        c.mutation_regime_threshold = j.at("mutation_regime_threshold").get<double>();
        c.population_size = j.at("population_size").get<int>();
        c.max_generations = j.at("max_generations").get<int>();
        c.stagnation_window = j.at("stagnation_window").get<int>();
        c.stagnation_threshold = j.at("stagnation_threshold").get<double>();
        c.operators.clear();
        for (const auto& name : j.at("operators")) {
            c.operators.push_back(op_from_name(name.get<std::string>()));
        }
        c.seed = j.at("seed").get<std::uint64_t>();
        c.validation_fraction = j.at("validation_fraction").get<double>();
        return c;
    }

} // namespace

std::string model_to_json(const FittedModel& model)
{
    json elements = json::array();
    for (const Terminal& t : model.genotype.elements) {
        if (t.is_variable()) {
            elements.push_back({ { "var", t.var_index } });
        } else {
            elements.push_back({ { "const", hex_double(t.value) } });
        }
    }
    json fusions = json::array();
    for (const FusionGene& g : model.genotype.fusions) {
        fusions.push_back({
            { "op1", std::string(op_name(g.op1)) },
            { "op2", std::string(op_name(g.op2)) },
            { "r_bits", g.r_bits },
            { "b", g.keep_first ? 1 : 0 },
        });
    }

    json scaler = {
        { "feature_mean", vector_to_json(model.scaler.feature_mean) },
        { "feature_std", vector_to_json(model.scaler.feature_std) },
        { "feature_constant", model.scaler.feature_constant },
        { "target_mean", hex_double(model.scaler.target_mean) },
        { "target_std", hex_double(model.scaler.target_std) },
        { "target_constant", model.scaler.target_constant },
    };

    json doc = {
        { "format", "zgp-model" },
        { "version", 1 },
        { "config", config_to_json(model.config) },
        { "feature_names", model.feature_names },
        { "target_name", model.target_name },
        { "genotype", { { "elements", elements }, { "fusions", fusions } } },
        { "alpha", vector_to_json(model.alpha) },
        { "scaler", scaler },
        { "train_mse", hex_double(model.train_mse) },
        { "validation_mse", hex_double(model.validation_mse) },
    };
    return doc.dump(2);
}

void save_model(const FittedModel& model, const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write model file: " + path);
    }
    out << model_to_json(model) << '\n';
}

FittedModel model_from_json(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("model file is not valid JSON: ") + e.what());
    }
    if (doc.value("format", "") != "zgp-model") {
        throw std::runtime_error("not a zgp model file");
    }

    FittedModel model;
    model.config = config_from_json(doc.at("config"));
    model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    model.target_name = doc.at("target_name").get<std::string>();

    for (const auto& e : doc.at("genotype").at("elements")) {
        if (e.contains("var")) {
            model.genotype.elements.push_back(Terminal::variable(e.at("var").get<int>()));
        } else {
            model.genotype.elements.push_back(
                Terminal::constant(parse_hex_double(e.at("const").get<std::string>())));
        }
    }
    for (const auto& f : doc.at("genotype").at("fusions")) {
        FusionGene gene;
        gene.op1 = op_from_name(f.at("op1").get<std::string>());
        gene.op2 = op_from_name(f.at("op2").get<std::string>());
        gene.r_bits = f.at("r_bits").get<std::uint32_t>();
        gene.keep_first = f.at("b").get<int>() != 0;
        model.genotype.fusions.push_back(gene);
    }

    model.alpha = vector_from_json(doc.at("alpha"));

    const json& sc = doc.at("scaler");
    model.scaler.feature_mean = vector_from_json(sc.at("feature_mean"));
    model.scaler.feature_std = vector_from_json(sc.at("feature_std"));
    model.scaler.feature_constant = sc.at("feature_constant").get<std::vector<bool>>();
    model.scaler.target_mean = parse_hex_double(sc.at("target_mean").get<std::string>());
    model.scaler.target_std = parse_hex_double(sc.at("target_std").get<std::string>());
    model.scaler.target_constant = sc.at("target_constant").get<bool>();

    model.train_mse = parse_hex_double(doc.at("train_mse").get<std::string>());
    model.validation_mse = parse_hex_double(doc.at("validation_mse").get<std::string>());

    const int expected_fusions = fusion_count(model.config.num_elements, model.config.num_stages);
    if (model.genotype.num_elements() != model.config.num_elements
        || model.genotype.num_fusions() != expected_fusions
        || model.alpha.size() != model.config.num_elements) {
        throw std::runtime_error("model file: genotype does not match its configuration");
    }
    return model;
}

FittedModel load_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open model file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return model_from_json(buffer.str());
}

} // namespace zgp
