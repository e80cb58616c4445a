#pragma once

#include <map>
#include <string>

namespace parrot::ns {

inline constexpr const char* kParrot = "https://w3id.org/parrot#";
inline constexpr const char* kGdprtext = "http://purl.org/adaptcentre/openscience/ontologies/GDPRtEXT#";
inline constexpr const char* kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr const char* kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr const char* kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr const char* kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr const char* kSkos = "http://www.w3.org/2004/02/skos/core#";
inline constexpr const char* kSosa = "http://www.w3.org/ns/sosa/";
inline constexpr const char* kSsn = "http://www.w3.org/ns/ssn/";
inline constexpr const char* kDcterms = "http://purl.org/dc/terms/";

inline std::string parrot(const std::string& local) { return kParrot + local; }
inline std::string rdf(const std::string& local) { return kRdf + local; }
inline std::string rdfs(const std::string& local) { return kRdfs + local; }
inline std::string owl(const std::string& local) { return kOwl + local; }

inline const std::string kRdfType = rdf("type");

/// Prefixes every query and rule file may use without declaring them.
/// `PARROT:` is an alias of `parrot:` so that queries written against the
/// original Protégé export run unchanged.
inline std::map<std::string, std::string> default_prefixes() {
    return {
        {"parrot", kParrot},   {"PARROT", kParrot}, {"gdprtext", kGdprtext}, {"rdf", kRdf},
        {"rdfs", kRdfs},       {"owl", kOwl},       {"xsd", kXsd},           {"skos", kSkos},
        {"sosa", kSosa},       {"ssn", kSsn},       {"dcterms", kDcterms},
    };
}

}  // namespace parrot::ns
