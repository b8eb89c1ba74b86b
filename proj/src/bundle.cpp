#include <json.hpp>

#include "abcat/encoder.hpp"
#include "abcat/errors.hpp"

namespace abcat {

using nlohmann::ordered_json;

std::string format_bundle(const Encoding& e) {
  ordered_json doc;

  ordered_json alphabet = ordered_json::array();
  for (const Symbol& s : e.uca.alphabet()) {
    alphabet.push_back({{"symbol", s}, {"category", format_category(e.uca.category_of(s))}});
  }
  doc["alphabet"] = std::move(alphabet);
  doc["target"] = format_category(e.uca.target());

  ordered_json hom = ordered_json::object();
  for (const Symbol& a : e.grammar.terminals()) hom[a] = e.h.image(a);
  doc["homomorphism"] = std::move(hom);

  ordered_json prims = ordered_json::array();
  for (const Prim& p : e.uca.primitives()) {
    prims.push_back({{"name", p.name()}, {"origin", std::string(to_string(p.origin()))}});
  }
  doc["primitives"] = std::move(prims);

  ordered_json prov = ordered_json::object();
  for (const Symbol& s : e.uca.alphabet()) {
    const SymbolProvenance& p = e.provenance.at(s);
    ordered_json params = ordered_json::array();
    for (const Category& c : p.params) params.push_back(format_category(c));
    prov[s] = {{"letter", p.letter},
               {"position", p.position},
               {"gadget", std::string(to_string(p.gadget))},
               {"params", std::move(params)}};
  }
  doc["provenance"] = std::move(prov);

  return doc.dump(2) + "\n";
}

LoadedBundle parse_bundle(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
    std::vector<std::pair<Symbol, Category>> assignment;
    ParseOptions machine{.allow_reserved = true};
    for (const auto& entry : doc.at("alphabet")) {
      assignment.emplace_back(entry.at("symbol").get<std::string>(),
                              parse_category(entry.at("category").get<std::string>(), machine));
    }
    Category target = parse_category(doc.at("target").get<std::string>(), machine);
    std::map<Symbol, Word> images;
    for (const auto& [letter, symbols] : doc.at("homomorphism").items()) {
      images.emplace(letter, symbols.get<Word>());
    }
    return LoadedBundle{UcaGrammar(std::move(assignment), std::move(target)),
                        Homomorphism(std::move(images))};
  } catch (const ordered_json::exception& ex) {
    throw SyntaxError(std::string("malformed encode bundle: ") + ex.what());
  }
}

}  // namespace abcat
