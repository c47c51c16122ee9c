// Copyright 2026 The WikiPDA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Writes the bundled toy corpus: 100 concepts described in English (as a
// MediaWiki XML dump) and French (as canonical JSONL), 200 articles in all.
// Concepts fall into two planted communities that link densely inside and
// sparsely across; ten display names are shared by one concept from each
// community so that anchors are ambiguous.
//
//   make_toy_corpus [output_dir]

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "wikipda/util.h"

namespace {

using wikipda::UniformIndex;

constexpr int kConcepts = 100;
constexpr int kCommunity = 50;
constexpr int kAmbiguous = 10;
constexpr int kLinksInside = 12;
constexpr int kLinksAcross = 2;

const char *const kSyllables[] = {"ka", "lo", "mi", "ra", "ten", "vu", "zo", "bel", "dar",
                                  "fen", "gor", "hal", "ix", "jun", "kel", "mor", "nar", "ost",
                                  "pil", "quen", "ros", "sul", "tor", "ul", "ven", "wil"};
const char *const kFillerEn[] = {"the", "and", "of", "with", "is", "near", "about", "from",
                                 "also", "known", "for", "its", "many", "early", "work"};
const char *const kFillerFr[] = {"le", "et", "de", "avec", "est", "pres", "sur", "depuis",
                                 "aussi", "connu", "pour", "ses", "nombreux", "premier", "oeuvre"};
const char *const kCommunityName[] = {"science", "music"};

struct Concept {
  int number;  // Q number
  int community;
  std::string name;  // display name, shared by ambiguous pairs
  std::string title_en;
  std::string title_fr;
};

std::string Capitalize(std::string s) {
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::vector<Concept> MakeConcepts() {
  std::vector<Concept> concepts;
  for (int i = 0; i < kConcepts; ++i) {
    Concept c;
    c.number = 1001 + i;
    c.community = i < kCommunity ? 0 : 1;
    // Pairs (i, i + 50) for i < kAmbiguous share a name.
    int base = i % kCommunity < kAmbiguous ? i % kCommunity : i;
    c.name = Capitalize(std::string(kSyllables[base % 26]) + kSyllables[(base / 26 + base * 7) % 26]);
    if (base >= 52) c.name += "ia";
    if (i % kCommunity < kAmbiguous) {
      c.title_en = c.name + " (" + kCommunityName[c.community] + ")";
      c.title_fr = c.name + " (" + (c.community == 0 ? "sciences" : "musique") + ")";
    } else {
      c.title_en = c.name;
      c.title_fr = c.name + "e";
    }
    concepts.push_back(c);
  }
  return concepts;
}

std::string XmlEscape(const std::string &s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

// Markup for the article about `self`.
std::string Markup(const std::vector<Concept> &concepts, const Concept &self, bool french,
                   std::mt19937_64 &rng) {
  std::vector<int> inside, across;
  for (int i = 0; i < kConcepts; ++i) {
    if (concepts[i].number == self.number) continue;
    (concepts[i].community == self.community ? inside : across).push_back(i);
  }
  wikipda::Shuffle(inside, rng);
  wikipda::Shuffle(across, rng);
  std::vector<int> targets(inside.begin(), inside.begin() + kLinksInside);
  targets.insert(targets.end(), across.begin(), across.begin() + kLinksAcross);

  // Each target is linked once and mentioned in plain text once or twice.
  std::vector<std::pair<int, bool>> mentions;
  for (int t : targets) {
    mentions.push_back({t, true});
    int plain = 1 + static_cast<int>(UniformIndex(rng, 2));
    for (int k = 0; k < plain; ++k) mentions.push_back({t, false});
  }
  wikipda::Shuffle(mentions, rng);
  // The linked mention must come first.
  std::vector<bool> seen(kConcepts, false);
  for (auto &[t, linked] : mentions) {
    linked = !seen[t];
    seen[t] = true;
  }

  const char *const *filler = french ? kFillerFr : kFillerEn;
  std::string text = "{{Infobox " + std::string(kCommunityName[self.community]) + "}}\n";
  text += "'''" + self.name + "''' " + filler[4] + " " + filler[5] + " ";
  for (size_t m = 0; m < mentions.size(); ++m) {
    const Concept &c = concepts[mentions[m].first];
    const std::string &title = french ? c.title_fr : c.title_en;
    const std::string anchor = french && title == c.name + "e" ? title : c.name;
    if (mentions[m].second) {
      text += title == anchor ? "[[" + title + "]]" : "[[" + title + "|" + anchor + "]]";
    } else {
      text += anchor;
    }
    text += " ";
    text += filler[UniformIndex(rng, 15)];
    text += m % 5 == 4 ? ".\n" : " ";
  }
  text += "<!-- generated -->\n";
  return text;
}

}  // namespace

int main(int argc, char **argv) {
  namespace fs = std::filesystem;
  fs::path dir = argc > 1 ? argv[1] : "data/toy";
  fs::create_directories(dir);
  std::vector<Concept> concepts = MakeConcepts();
  std::mt19937_64 rng(20200717);

  std::ofstream sitelinks(dir / "sitelinks.tsv");
  sitelinks << "# lang\ttitle\tqid\n";
  for (const Concept &c : concepts) {
    sitelinks << "en\t" << c.title_en << "\tQ" << c.number << "\n";
    sitelinks << "fr\t" << c.title_fr << "\tQ" << c.number << "\n";
  }

  // A redirect for every ambiguous science concept; English articles link
  // through it.
  std::ofstream redirects(dir / "redirects.tsv");
  redirects << "# lang\tfrom\tto\n";
  for (int i = 0; i < kAmbiguous; ++i) {
    redirects << "en\t" << concepts[i].name << " (physics)\t" << concepts[i].title_en << "\n";
  }

  std::ofstream labels(dir / "labels.tsv");
  labels << "# qid\tlabels\n";
  for (const Concept &c : concepts) {
    labels << "Q" << c.number << "\t" << kCommunityName[c.community] << "\n";
  }

  std::ofstream xml(dir / "en.xml");
  xml << "<mediawiki xmlns=\"http://www.mediawiki.org/xml/export-0.10/\" xml:lang=\"en\">\n";
  auto page = [&](const std::string &title, int ns, const std::string &text, bool redirect) {
    xml << "  <page>\n    <title>" << XmlEscape(title) << "</title>\n    <ns>" << ns
        << "</ns>\n";
    if (redirect) xml << "    <redirect title=\"x\" />\n";
    xml << "    <revision>\n      <text xml:space=\"preserve\">" << XmlEscape(text)
        << "</text>\n    </revision>\n  </page>\n";
  };
  for (const Concept &c : concepts) {
    std::string text = Markup(concepts, c, false, rng);
    if (c.community == 0 && c.number % 7 == 0) {
      // Route one link through a redirect title.
      const Concept &target = concepts[c.number % kAmbiguous];
      if (target.number != c.number) {
        text += "See [[" + target.name + " (physics)|" + target.name + "]].\n";
      }
    }
    page(c.title_en, 0, text, false);
  }
  page("Talk:" + concepts[0].title_en, 1, "discussion [[" + concepts[1].title_en + "]]", false);
  page(concepts[0].name + " (physics)", 0, "#REDIRECT [[" + concepts[0].title_en + "]]", true);
  xml << "</mediawiki>\n";

  std::ofstream fr(dir / "fr.jsonl");
  for (const Concept &c : concepts) {
    nlohmann::ordered_json record;
    record["qid"] = "Q" + std::to_string(c.number);
    record["lang"] = "fr";
    record["title"] = c.title_fr;
    record["ns"] = 0;
    record["text"] = Markup(concepts, c, true, rng);
    fr << record.dump() << "\n";
  }
  nlohmann::ordered_json help;
  help["qid"] = "";
  help["lang"] = "fr";
  help["title"] = "Aide:Sommaire";
  help["ns"] = 12;
  help["text"] = "aide";
  fr << help.dump() << "\n";

  nlohmann::ordered_json config;
  config["languages"] = {"en", "fr"};
  config["corpus"] = {{"en", "en.xml"}, {"fr", "fr.jsonl"}};
  config["redirects"] = "redirects.tsv";
  config["sitelinks"] = "sitelinks.tsv";
  config["labels"] = "labels.tsv";
  config["workdir"] = "work";
  config["rank"] = 4;
  config["als_iterations"] = 8;
  config["min_df"] = 3;
  config["min_doc_links"] = 5;
  config["k"] = 2;
  config["alpha"] = 0.5;
  config["lda_iterations"] = 100;
  config["infer_iterations"] = 40;
  config["infer_burn_in"] = 20;
  config["mask_fraction"] = 0.1;
  config["intruder_topics"] = 2;
  config["intruder_low_rank"] = 20;
  config["bias_sample"] = 60;
  std::ofstream(dir / "config.json") << config.dump(2) << "\n";
  std::cout << "wrote toy corpus to " << dir.string() << "\n";
  return 0;
}
