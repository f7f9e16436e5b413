#include <subseq/word.hpp>
#include <subseq/errors.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace subseq
{
    namespace
    {
        auto check_symbols(const std::vector<Symbol> & symbols, unsigned alphabet_size) -> void
        {
            if (alphabet_size == 0)
                throw ContractError("alphabet size must be at least 1");
            for (auto s : symbols)
                if (s >= alphabet_size)
                    throw ContractError("symbol " + std::to_string(s) + " is outside alphabet of size "
                            + std::to_string(alphabet_size));
        }

        auto trim(std::string_view s) -> std::string_view
        {
            while (! s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
                s.remove_prefix(1);
            while (! s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
                s.remove_suffix(1);
            return s;
        }
    }

    Word::Word(unsigned alphabet_size) :
        _alphabet_size(alphabet_size)
    {
        check_symbols(_symbols, alphabet_size);
    }

    Word::Word(unsigned alphabet_size, std::vector<Symbol> symbols) :
        _symbols(std::move(symbols)),
        _alphabet_size(alphabet_size)
    {
        check_symbols(_symbols, alphabet_size);
    }

    auto Word::from_letters(std::string_view letters, unsigned alphabet_size) -> Word
    {
        std::vector<Symbol> symbols;
        symbols.reserve(letters.size());
        for (char c : letters) {
            if (c < 'a' || c > 'z')
                throw ContractError(std::string("not a lowercase letter: '") + c + "'");
            symbols.push_back(static_cast<Symbol>(c - 'a'));
        }
        return Word(alphabet_size, std::move(symbols));
    }

    auto Word::push_back(Symbol s) -> void
    {
        if (s >= _alphabet_size)
            throw ContractError("symbol outside alphabet");
        _symbols.push_back(s);
    }

    auto subword(const Word & w, Interval iv) -> Word
    {
        auto n = static_cast<std::ptrdiff_t>(w.size());
        if (iv.hi < iv.lo - 1)
            throw RangeError("interval [" + std::to_string(iv.lo) + "," + std::to_string(iv.hi) + "] is malformed");
        if (iv.lo < 0 || iv.lo > n || iv.hi >= n)
            throw RangeError("interval [" + std::to_string(iv.lo) + "," + std::to_string(iv.hi)
                    + "] is outside a word of length " + std::to_string(n));
        return Word(w.alphabet_size(), std::vector<Symbol>(w.begin() + iv.lo, w.begin() + iv.hi + 1));
    }

    auto concat(const Word & w1, const Word & w2) -> Word
    {
        if (w1.alphabet_size() != w2.alphabet_size())
            throw ContractError("concatenating words over different alphabets");
        std::vector<Symbol> out(w1.begin(), w1.end());
        out.insert(out.end(), w2.begin(), w2.end());
        return Word(w1.alphabet_size(), std::move(out));
    }

    auto power(const Word & w, std::size_t copies) -> Word
    {
        std::vector<Symbol> out;
        out.reserve(w.size() * copies);
        for (std::size_t c = 0 ; c < copies ; ++c)
            out.insert(out.end(), w.begin(), w.end());
        return Word(w.alphabet_size(), std::move(out));
    }

    auto reverse(const Word & w) -> Word
    {
        return Word(w.alphabet_size(), std::vector<Symbol>(w.symbols().rbegin(), w.symbols().rend()));
    }

    auto first_occurrence_form(const Word & w) -> Word
    {
        std::vector<Symbol> relabel(w.alphabet_size(), w.alphabet_size());
        Symbol next = 0;
        std::vector<Symbol> out;
        out.reserve(w.size());
        for (auto s : w) {
            if (relabel[s] == w.alphabet_size())
                relabel[s] = next++;
            out.push_back(relabel[s]);
        }
        return Word(w.alphabet_size(), std::move(out));
    }

    auto canonical_key(const Word & w) -> CanonicalKey
    {
        auto forward = first_occurrence_form(w);
        auto backward = first_occurrence_form(reverse(w));
        if (backward < forward)
            return CanonicalKey{ std::move(backward), true };
        return CanonicalKey{ std::move(forward), false };
    }

    auto to_text(const Word & w) -> std::string
    {
        if (w.empty())
            return "-";
        std::string out;
        if (w.alphabet_size() <= 26) {
            for (auto s : w)
                out.push_back(static_cast<char>('a' + s));
        }
        else {
            for (std::size_t i = 0 ; i < w.size() ; ++i) {
                if (i)
                    out.push_back(',');
                out += std::to_string(w[i]);
            }
        }
        return out;
    }

    auto parse_word(std::string_view text, unsigned alphabet_size) -> Word
    {
        text = trim(text);
        if (text == "-" || text.empty())
            return Word(alphabet_size);

        bool decimal = alphabet_size > 26 || text.find(',') != std::string_view::npos
            || (text.front() >= '0' && text.front() <= '9');
        if (! decimal)
            return Word::from_letters(text, alphabet_size);

        std::vector<Symbol> symbols;
        while (! text.empty()) {
            auto comma = text.find(',');
            auto field = trim(text.substr(0, comma));
            Symbol value = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
                throw ContractError("malformed symbol id '" + std::string(field) + "'");
            symbols.push_back(value);
            if (comma == std::string_view::npos)
                break;
            text.remove_prefix(comma + 1);
        }
        return Word(alphabet_size, std::move(symbols));
    }

    auto operator<< (std::ostream & s, const Word & w) -> std::ostream &
    {
        return s << to_text(w);
    }

    auto read_word_file(std::istream & in) -> WordFile
    {
        WordFile file;
        std::string line;
        bool have_header = false;
        while (std::getline(in, line)) {
            auto body = trim(line);
            if (! have_header) {
                if (body.empty() || body.front() == '#')
                    continue;
                constexpr std::string_view prefix = "alphabet k=";
                if (body.substr(0, prefix.size()) != prefix)
                    throw ContractError("word file must start with 'alphabet k=<int>'");
                auto digits = body.substr(prefix.size());
                unsigned k = 0;
                auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
                if (ec != std::errc() || ptr != digits.data() + digits.size() || k == 0)
                    throw ContractError("bad alphabet size in header '" + std::string(body) + "'");
                file.alphabet_size = k;
                have_header = true;
                continue;
            }
            if (body.empty() || body.front() == '#')
                continue;
            file.words.push_back(parse_word(body, file.alphabet_size));
        }
        if (! have_header)
            throw ContractError("word file has no header line");
        return file;
    }

    auto read_word_file(const std::string & path) -> WordFile
    {
        std::ifstream in(path);
        if (! in)
            throw ContractError("cannot open word file '" + path + "'");
        return read_word_file(in);
    }

    auto write_word_file(std::ostream & out, const WordFile & file) -> void
    {
        out << "alphabet k=" << file.alphabet_size << '\n';
        for (auto & w : file.words)
            out << to_text(w) << '\n';
    }
}
