#include "affinity/model_io.hpp"

#include <fstream>

#include "affinity/errors.hpp"

namespace affinity {

namespace {

using Json = nlohmann::ordered_json;

Json node_to_json(const TreeNode& node) {
    Json j;
    if (node.is_leaf()) {
        j["value"] = node.value;
        j["count"] = node.count;
    } else {
        j["feature"] = node.feature;
        j["threshold"] = node.threshold;
        j["left"] = node.left;
        j["right"] = node.right;
        j["gain"] = node.gain;
        j["count"] = node.count;
    }
    return j;
}

TreeNode node_from_json(const Json& j) {
    TreeNode node;
    if (j.contains("feature")) {
        node.feature = j.at("feature").get<int>();
        node.threshold = j.at("threshold").get<double>();
        node.left = j.at("left").get<int>();
        node.right = j.at("right").get<int>();
        node.gain = j.value("gain", 0.0);
    } else {
        node.value = j.at("value").get<double>();
    }
    node.count = j.value("count", std::uint64_t{0});
    return node;
}

}  // namespace

nlohmann::ordered_json model_to_json(const Ensemble& model) {
    Json j;
    j["version"] = kModelVersion;
    j["base_score"] = model.base_score;
    j["learning_rate"] = model.learning_rate;
    j["feature_names"] = model.feature_names;
    j["bins"] = Json{{"thresholds", model.bin_map.thresholds}};
    Json trees = Json::array();
    for (const Tree& tree : model.trees) {
        Json nodes = Json::array();
        for (const TreeNode& node : tree.nodes) nodes.push_back(node_to_json(node));
        trees.push_back(Json{{"nodes", std::move(nodes)}});
    }
    j["trees"] = std::move(trees);
    return j;
}

Ensemble model_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object() || !j.contains("version"))
        throw ModelIoError("model document is corrupt: no version tag");
    const std::string version = j.at("version").get<std::string>();
    if (version != kModelVersion)
        throw ModelIoError("model version mismatch: file has '" + version + "', expected '" +
                           kModelVersion + "'");
    Ensemble model;
    try {
        model.version = version;
        model.base_score = j.at("base_score").get<double>();
        model.learning_rate = j.at("learning_rate").get<double>();
        model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        model.bin_map.thresholds =
            j.at("bins").at("thresholds").get<std::vector<std::vector<double>>>();
        for (const Json& jt : j.at("trees")) {
            Tree tree;
            for (const Json& jn : jt.at("nodes")) tree.nodes.push_back(node_from_json(jn));
            if (tree.nodes.empty())
                throw ModelIoError("model document is corrupt: empty tree");
            model.trees.push_back(std::move(tree));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ModelIoError(std::string("model document is corrupt: ") + e.what());
    }
    return model;
}

void save_model_document(const nlohmann::ordered_json& document, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ModelIoError("cannot open '" + path + "' for writing");
    out << document.dump(2) << '\n';
    if (!out)
        throw ModelIoError("write to '" + path + "' failed");
}

nlohmann::ordered_json load_model_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ModelIoError("cannot open model file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ModelIoError("model file '" + path + "' is corrupt: " + e.what());
    }
    return j;
}

void save_model(const Ensemble& model, const std::string& path) {
    save_model_document(model_to_json(model), path);
}

Ensemble load_model(const std::string& path) {
    return model_from_json(load_model_document(path));
}

}  // namespace affinity
