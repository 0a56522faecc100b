#ifndef BRKIT_IO_HPP
#define BRKIT_IO_HPP

#include <iosfwd>
#include <string>

#include "brkit/recognize.hpp"
#include "brkit/space.hpp"

namespace brkit {

// %matspace v1 text format (bit-exact writer)
void write_space_text(const MatSpace& S, std::ostream& os);
MatSpace read_space_text(std::istream& is);

std::string space_to_json(const MatSpace& S);
MatSpace space_from_json(const std::string& text);

// chooses JSON when the path ends in .json, text otherwise
void write_space_file(const MatSpace& S, const std::string& path);
MatSpace read_space_file(const std::string& path);

// certificate: matspace-format P with an added model line
void write_cert_text(const CongruenceCert& cert, const Field& F,
                     std::ostream& os);
CongruenceCert read_cert_text(std::istream& is);
void write_cert_file(const CongruenceCert& cert, const Field& F,
                     const std::string& path);
CongruenceCert read_cert_file(const std::string& path);

std::string outcome_to_json(const RecognitionOutcome& out);

} // namespace brkit

#endif
