#pragma once

// Small fixtures shared by the test binaries.

#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "cloneblame/harness.hpp"

namespace support {

class TempDir {
public:
    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "cloneblame-XXXXXX").string();
        if (mkdtemp(tmpl.data()) == nullptr) {
            throw std::runtime_error("mkdtemp failed");
        }
        path_ = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string sub(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

/// An 11-line method body well above the default detector thresholds, each
/// line marked as family `family`.
inline std::string snippet(int family = 1) {
    const std::string m = " //~" + std::to_string(family) + "\n";
    return "    compute(int[] values, int limit) {" + m +
           "        int total = 0;" + m +
           "        for (int i = 0; i < values.length; i++) {" + m +
           "            if (values[i] > 0 && total < limit) {" + m +
           "                total += values[i] * 2;" + m +
           "            } else {" + m +
           "                System.out.println(\"skip \" + i);" + m +
           "            }" + m +
           "        }" + m +
           "        return total / values.length;" + m +
           "    }" + m;
}

inline constexpr std::uint32_t kSnippetLines = 11;
/// Line of the snippet's first line in files built by `host_file`.
inline constexpr std::uint32_t kSnippetFirstLine = 4;

/// A class whose snippet is wrapped by neighbours chosen by `variant`, so
/// each variant gives distinct left and right context tokens.
inline std::string host_file(const std::string& cls, int variant, const std::string& body) {
    static const char* const before[] = {"    public int\n", "    static double\n", "    private char\n",
                                         "    protected float\n"};
    static const char* const after[] = {"    private long pad;\n", "    boolean flag;\n", "    final short s = 1;\n",
                                        "    volatile byte b;\n"};
    return "package sample;\npublic class " + cls + " {\n" + before[variant] + body + after[variant] + "}\n";
}

inline std::string host_file(const std::string& cls, int variant) {
    return host_file(cls, variant, snippet());
}

/// A class with no repeated code worth reporting.
inline std::string plain_file(const std::string& cls) {
    return "package sample;\npublic class " + cls + " {\n    int value() {\n        return 42;\n    }\n}\n";
}

}  // namespace support
