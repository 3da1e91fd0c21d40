#ifndef SFWM_ERRORS_HPP
#define SFWM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sfwm {

// Every failure carries a stable machine-readable code; the CLI prints the
// code on stderr and maps the category to its exit status (2 = config/usage,
// 3 = numerical).
class Error : public std::runtime_error {
public:
    enum class Category { Config, Numerical };

    Error(std::string code, const std::string& what, Category cat)
        : std::runtime_error(what), code_(std::move(code)), cat_(cat) {}

    const std::string& code() const noexcept { return code_; }
    Category category() const noexcept { return cat_; }

private:
    std::string code_;
    Category cat_;
};

class ConfigError : public Error {
public:
    ConfigError(std::string code, const std::string& what)
        : Error(std::move(code), what, Category::Config) {}
};

class NumericalError : public Error {
public:
    NumericalError(std::string code, const std::string& what)
        : Error(std::move(code), what, Category::Numerical) {}
};

inline ConfigError invalid_argument_error(const std::string& what) {
    return ConfigError("invalid-argument", what);
}

}  // namespace sfwm

#endif
