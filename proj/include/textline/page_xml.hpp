#pragma once

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "textline/error.hpp"
#include "textline/geometry.hpp"

namespace textline {

struct PageTextLine {
  std::string id;
  // Lines split over several polygons share a key (the `lineId:N` custom tag
  // when present, otherwise the element id).
  std::string line_key;
  Ring ring;
};

struct PageDocument {
  int width = 0;
  int height = 0;
  std::string image_filename;
  std::vector<PageTextLine> lines;
};

namespace detail {

namespace pt = boost::property_tree;

inline std::string local_name(const std::string& tag) {
  const auto colon = tag.find(':');
  return colon == std::string::npos ? tag : tag.substr(colon + 1);
}

inline Ring parse_points_attribute(const std::string& text) {
  Ring ring;
  std::istringstream in(text);
  std::string pair;
  while (in >> pair) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::parse, "bad PAGE point '" + pair + "'");
    try {
      ring.points.push_back({std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::parse, "bad PAGE point '" + pair + "'");
    }
  }
  return ring;
}

inline Ring parse_coords(const pt::ptree& coords) {
  if (auto pts = coords.get_optional<std::string>("<xmlattr>.points")) return parse_points_attribute(*pts);
  Ring ring;  // PAGE 2010 style <Point x= y=/> children
  for (const auto& [tag, child] : coords) {
    if (local_name(tag) != "Point") continue;
    ring.points.push_back({child.get<double>("<xmlattr>.x"), child.get<double>("<xmlattr>.y")});
  }
  return ring;
}

inline void collect_text_lines(const pt::ptree& node, PageDocument& doc) {
  for (const auto& [tag, child] : node) {
    const auto name = local_name(tag);
    if (name == "Page") {
      doc.width = child.get<int>("<xmlattr>.imageWidth", 0);
      doc.height = child.get<int>("<xmlattr>.imageHeight", 0);
      doc.image_filename = child.get<std::string>("<xmlattr>.imageFilename", "");
    }
    if (name == "TextLine") {
      PageTextLine line;
      line.id = child.get<std::string>("<xmlattr>.id", "line" + std::to_string(doc.lines.size() + 1));
      line.line_key = line.id;
      const auto custom = child.get<std::string>("<xmlattr>.custom", "");
      if (const auto pos = custom.find("lineId:"); pos != std::string::npos) {
        const auto end = custom.find_first_of(";} ", pos);
        line.line_key = custom.substr(pos + 7, end == std::string::npos ? std::string::npos : end - pos - 7);
      }
      for (const auto& [ctag, coords] : child) {
        if (local_name(ctag) == "Coords") {
          line.ring = parse_coords(coords);
          break;
        }
      }
      doc.lines.push_back(std::move(line));
      continue;  // word/glyph polygons inside a TextLine are ignored
    }
    if (name != "<xmlattr>") collect_text_lines(child, doc);
  }
}

}  // namespace detail

// Reads only what text line extraction needs: page size and the coordinate
// ring of every TextLine. All other PAGE content is ignored.
inline PageDocument read_page_xml(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::io, "file not found '" + path.string() + "'");
  detail::pt::ptree tree;
  try {
    detail::pt::read_xml(path.string(), tree);
  } catch (const detail::pt::ptree_error& e) {
    throw Error(ErrorCode::parse, "cannot parse PAGE XML '" + path.string() + "': " + e.what());
  }
  PageDocument doc;
  detail::collect_text_lines(tree, doc);
  return doc;
}

inline std::string format_points(const Ring& ring) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ring.points.size(); ++i) {
    if (i) out << ' ';
    out << ring.points[i].x << ',' << ring.points[i].y;
  }
  return out.str();
}

// One TextLine element per ring; rings of the same line share `lineId:N`.
inline void write_page_xml(const std::filesystem::path& path, int width, int height,
                           const std::string& image_filename,
                           const std::vector<std::vector<Ring>>& rings_per_line) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path.string() + "'");
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<PcGts xmlns=\"http://schema.primaresearch.org/PAGE/gts/pagecontent/2013-07-15\">\n"
      << "  <Metadata>\n    <Creator>textline</Creator>\n  </Metadata>\n"
      << "  <Page imageFilename=\"" << image_filename << "\" imageWidth=\"" << width << "\" imageHeight=\""
      << height << "\">\n"
      << "    <TextRegion id=\"region_1\">\n"
      << "      <Coords points=\"0,0 " << width << ",0 " << width << ',' << height << " 0," << height << "\"/>\n";
  for (std::size_t line = 0; line < rings_per_line.size(); ++line) {
    const auto& rings = rings_per_line[line];
    for (std::size_t k = 0; k < rings.size(); ++k) {
      out << "      <TextLine id=\"line_" << line + 1 << '_' << k + 1 << "\" custom=\"lineId:" << line + 1
          << ";\">\n"
          << "        <Coords points=\"" << format_points(rings[k]) << "\"/>\n"
          << "      </TextLine>\n";
    }
  }
  out << "    </TextRegion>\n  </Page>\n</PcGts>\n";
  if (!out) throw Error(ErrorCode::io, "failed writing '" + path.string() + "'");
}

}  // namespace textline
