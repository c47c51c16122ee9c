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

// Streaming reader for MediaWiki XML dumps, built on expat.

#include <expat.h>

#include <cstring>
#include <exception>
#include <memory>

#include "wikipda/corpus.h"

namespace wikipda {

namespace {

enum class Field { kNone, kTitle, kNs, kText };

struct PageState {
  std::string title;
  std::string ns;
  std::string text;
  bool redirect = false;
};

class DumpHandler {
 public:
  DumpHandler(const RedirectMap &redirects, const SitelinkMap &sitelinks,
              const IngestOptions &options, const ArticleSink &sink,
              Diagnostics *diagnostics)
      : redirects_(redirects), sitelinks_(sitelinks), options_(options),
        sink_(sink), diagnostics_(diagnostics) {}

  static void OnStart(void *data, const XML_Char *name, const XML_Char **) {
    static_cast<DumpHandler *>(data)->Start(name);
  }
  static void OnEnd(void *data, const XML_Char *name) {
    static_cast<DumpHandler *>(data)->End(name);
  }
  static void OnText(void *data, const XML_Char *s, int len) {
    auto *self = static_cast<DumpHandler *>(data);
    if (self->field_ == Field::kNone) return;
    std::string *target = self->field_ == Field::kTitle ? &self->page_.title
                          : self->field_ == Field::kNs  ? &self->page_.ns
                                                        : &self->page_.text;
    target->append(s, static_cast<size_t>(len));
  }

  std::exception_ptr error;
  XML_Parser parser = nullptr;

 private:
  void Start(const char *name) {
    depth_++;
    if (std::strcmp(name, "page") == 0) {
      page_ = PageState();
      in_page_ = true;
      return;
    }
    if (!in_page_) return;
    if (std::strcmp(name, "title") == 0) {
      field_ = Field::kTitle;
    } else if (std::strcmp(name, "ns") == 0) {
      field_ = Field::kNs;
    } else if (std::strcmp(name, "text") == 0) {
      // Later revisions replace earlier ones.
      page_.text.clear();
      field_ = Field::kText;
    } else if (std::strcmp(name, "redirect") == 0) {
      page_.redirect = true;
    }
  }

  void End(const char *name) {
    depth_--;
    field_ = Field::kNone;
    if (std::strcmp(name, "page") != 0 || !in_page_) return;
    in_page_ = false;
    try {
      EmitPage();
    } catch (...) {
      error = std::current_exception();
      XML_StopParser(parser, XML_FALSE);
    }
  }

  void EmitPage() {
    if (diagnostics_) diagnostics_->Increment("records");
    if (page_.ns.empty() || page_.ns.find_first_not_of("0123456789-") != std::string::npos) {
      throw ParseError("page '" + page_.title + "' has invalid <ns> '" + page_.ns + "'");
    }
    if (std::stoll(page_.ns) != 0) {
      if (diagnostics_) diagnostics_->Increment("dropped_namespace");
      return;
    }
    if (page_.redirect) {
      if (diagnostics_) diagnostics_->Increment("dropped_redirect_page");
      return;
    }
    std::string title = NormalizeTitle(page_.title);
    auto cid = MapToConcept(options_.lang, title, sitelinks_);
    if (!cid) {
      if (diagnostics_) diagnostics_->Increment("dropped_unmapped_article");
      return;
    }
    Article article = BuildArticle(*cid, options_.lang, title, page_.text, redirects_,
                                   sitelinks_, diagnostics_);
    if (diagnostics_) diagnostics_->Increment("articles");
    sink_(std::move(article));
  }

  const RedirectMap &redirects_;
  const SitelinkMap &sitelinks_;
  const IngestOptions &options_;
  const ArticleSink &sink_;
  Diagnostics *diagnostics_;
  PageState page_;
  Field field_ = Field::kNone;
  bool in_page_ = false;
  int depth_ = 0;
};

}  // namespace

void IngestMediaWikiXml(std::istream &in, const std::string &source,
                        const RedirectMap &redirects, const SitelinkMap &sitelinks,
                        const IngestOptions &options, const ArticleSink &sink,
                        Diagnostics *diagnostics) {
  if (options.lang.empty()) {
    throw InvalidArgument("a language code is required to ingest " + source);
  }
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw Error("cannot allocate XML parser");
  DumpHandler handler(redirects, sitelinks, options, sink, diagnostics);
  handler.parser = parser.get();
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(parser.get(), &DumpHandler::OnStart, &DumpHandler::OnEnd);
  XML_SetCharacterDataHandler(parser.get(), &DumpHandler::OnText);

  std::string buffer(1 << 16, '\0');
  bool done = false;
  bool first_chunk = true;
  while (!done) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    std::streamsize got = in.gcount();
    if (in.bad()) throw IoError("read error in " + source);
    done = got < static_cast<std::streamsize>(buffer.size());
    if (first_chunk && got == 0) return;  // empty source, empty stream
    first_chunk = false;
    if (XML_Parse(parser.get(), buffer.data(), static_cast<int>(got), done) ==
        XML_STATUS_ERROR) {
      if (handler.error) {
        try {
          std::rethrow_exception(handler.error);
        } catch (const ParseError &e) {
          throw ParseError(source + ":" +
                           std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
                           e.what());
        }
      }
      throw ParseError(source + ":" + std::to_string(XML_GetCurrentLineNumber(parser.get())) +
                       ": " + XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
  }
}

}  // namespace wikipda
