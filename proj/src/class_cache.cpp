#include "rvq/class_cache.hpp"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <map>

#include <json.hpp>

namespace rvq {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Read-only mapping of a whole file.
class MappedFile {
 public:
  explicit MappedFile(const std::filesystem::path& file) {
    fd_ = ::open(file.c_str(), O_RDONLY);
    if (fd_ < 0) throw Error(ErrorCode::CacheCorrupt, "cannot open " + file.string());
    struct stat st {};
    if (::fstat(fd_, &st) != 0) throw Error(ErrorCode::CacheCorrupt, "cannot stat " + file.string());
    size_ = static_cast<std::size_t>(st.st_size);
    if (size_ > 0) {
      void* p = ::mmap(nullptr, size_, PROT_READ, MAP_PRIVATE, fd_, 0);
      if (p == MAP_FAILED) throw Error(ErrorCode::CacheCorrupt, "cannot map " + file.string());
      data_ = static_cast<const char*>(p);
    }
  }
  ~MappedFile() {
    if (data_) ::munmap(const_cast<char*>(data_), size_);
    if (fd_ >= 0) ::close(fd_);
  }
  MappedFile(const MappedFile&) = delete;
  MappedFile& operator=(const MappedFile&) = delete;

  std::string_view view() const { return {data_, size_}; }

 private:
  int fd_ = -1;
  const char* data_ = nullptr;
  std::size_t size_ = 0;
};

json index_or_null(std::uint32_t t) {
  return t == RauzyClass::npos ? json(nullptr) : json(t);
}

}  // namespace

void save_class(const RauzyClass& cls, const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    std::size_t explored = 0;
    while (explored < cls.size() && cls.explored(explored)) ++explored;
    json header = {{"format", kFormatVersion},
                   {"base", cls.base().to_string()},
                   {"alphabet", cls.base().alphabet()},
                   {"complete", cls.complete()},
                   {"reduced", cls.reduced()},
                   {"admissible_only", cls.admissible_only()},
                   {"vertices", cls.size()},
                   {"arrows", cls.arrow_count()},
                   {"explored", explored}};
    out << header.dump() << '\n';
    const auto& names = cls.base().alphabet();
    for (std::size_t i = 0; i < cls.size(); ++i) {
      json winners = json::array();
      for (Move k : {Move::Top, Move::Bottom}) {
        Letter w = cls.winner(i, k);
        winners.push_back(w < 0 ? json(nullptr) : json(names[w]));
      }
      json line = {{"encoding", cls.vertex(i).to_string()},
                   {"top", index_or_null(cls.target(i, Move::Top))},
                   {"bottom", index_or_null(cls.target(i, Move::Bottom))},
                   {"winners", winners}};
      out << line.dump() << '\n';
    }
    if (!out) throw Error(ErrorCode::CacheCorrupt, "write failed for " + file.string());
  }
  std::filesystem::rename(tmp, file);
}

std::shared_ptr<const RauzyClass> load_class(const std::filesystem::path& file) {
  MappedFile mapped(file);
  std::string_view data = mapped.view();
  auto next_line = [&]() -> std::string_view {
    auto nl = data.find('\n');
    std::string_view line = data.substr(0, nl);
    data = nl == std::string_view::npos ? std::string_view{} : data.substr(nl + 1);
    return line;
  };
  try {
    const json header = json::parse(next_line());
    if (header.at("format").get<int>() != kFormatVersion)
      throw Error(ErrorCode::CacheCorrupt, "unsupported format in " + file.string());
    auto alphabet = header.at("alphabet").get<std::vector<std::string>>();
    std::map<std::string, Letter> index;
    for (std::size_t a = 0; a < alphabet.size(); ++a) index[alphabet[a]] = static_cast<Letter>(a);

    auto encode = [&](const std::string& text) {
      auto slash = text.find('/');
      std::string key(1, '\0');
      std::size_t ell = 0;
      std::size_t pos = 0;
      while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (pos >= text.size()) break;
        auto end = text.find(' ', pos);
        if (end == std::string::npos) end = text.size();
        const std::string tok = text.substr(pos, end - pos);
        if (tok != "/") {
          auto it = index.find(tok);
          if (it == index.end()) throw Error(ErrorCode::CacheCorrupt, "unknown letter " + tok);
          key.push_back(static_cast<char>(it->second));
          if (pos < slash) ++ell;
        }
        pos = end;
      }
      key[0] = static_cast<char>(ell);
      return key;
    };

    auto shared = std::make_shared<const std::vector<std::string>>(alphabet);
    const auto base =
        GeneralizedPermutation::from_key(shared, encode(header.at("base").get<std::string>()));
    const bool reduced = header.at("reduced").get<bool>();
    auto cls = std::make_shared<RauzyClass>(base, reduced, header.at("admissible_only").get<bool>());
    const std::size_t n = header.at("vertices").get<std::size_t>();

    std::vector<json> lines;
    lines.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      json line = json::parse(next_line());
      if (cls->add(encode(line.at("encoding").get<std::string>())) != i)
        throw Error(ErrorCode::CacheCorrupt, "duplicate vertex in " + file.string());
      lines.push_back(std::move(line));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& line = lines[i];
      const auto& winners = line.at("winners");
      for (Move k : {Move::Top, Move::Bottom}) {
        const auto& t = line.at(k == Move::Top ? "top" : "bottom");
        if (t.is_null()) continue;
        const auto& w = winners.at(static_cast<int>(k));
        cls->set_arrow(i, k, t.get<std::uint32_t>(), index.at(w.get<std::string>()));
      }
    }
    cls->finish(header.at("complete").get<bool>(), header.at("explored").get<std::size_t>());
    return cls;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CacheCorrupt, file.string() + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw Error(ErrorCode::CacheCorrupt, file.string() + ": " + e.what());
  }
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("RVQ_CACHE_DIR"); env && *env) return env;
  return ".rvq-cache";
}

ClassStore::ClassStore(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

std::filesystem::path ClassStore::file_for(const GeneralizedPermutation& seed,
                                           const ClassOptions& options) const {
  const GeneralizedPermutation base = options.reduced ? reduced_form(seed) : seed;
  std::string id = base.to_string();
  id += options.reduced ? "|reduced" : "|labeled";
  if (options.admissible_only) id += "|admissible";
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(id)));
  return (dir_ ? *dir_ : std::filesystem::path(".")) / ("class-" + std::string(hex) + ".jsonl");
}

std::shared_ptr<const RauzyClass> ClassStore::get(const GeneralizedPermutation& seed,
                                                  const ClassOptions& options) {
  const std::string id = file_for(seed, options).string();
  for (const auto& [k, cls] : memo_)
    if (k == id) return cls;
  std::shared_ptr<const RauzyClass> cls;
  if (dir_ && std::filesystem::exists(id)) {
    try {
      auto loaded = load_class(id);
      if (loaded->complete() && loaded->base().to_string() ==
                                    (options.reduced ? reduced_form(seed) : seed).to_string())
        cls = loaded;
    } catch (const Error&) {
      // Stale or damaged file; recompute below.
    }
  }
  if (!cls) {
    cls = enumerate_class(seed, options);
    if (dir_) save_class(*cls, id);
  }
  memo_.emplace_back(id, cls);
  return cls;
}

}  // namespace rvq
