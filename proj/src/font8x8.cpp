// Built-in 8x8 monospace bitmap font for printable ASCII. Glyphs are
// drawn as string art and parsed once at startup; '#' marks coverage.
// Column 7 stays empty for inter-character spacing.

#include <array>
#include <map>
#include <vector>

#include "flowtext/errors.hpp"
#include "flowtext/seed_render.hpp"

namespace flowtext {

namespace {

struct GlyphDef {
  char32_t code;
  const char* art;  // 64 chars, 8 rows of 8
};

const GlyphDef kGlyphs[] = {
    {U' ',
     "........"
     "........"
     "........"
     "........"
     "........"
     "........"
     "........"
     "........"},
    {U'!',
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "........"
     "...#...."
     "........"},
    {U'"',
     "..#.#..."
     "..#.#..."
     "..#.#..."
     "........"
     "........"
     "........"
     "........"
     "........"},
    {U'#',
     ".#..#..."
     ".#..#..."
     "######.."
     ".#..#..."
     "######.."
     ".#..#..."
     ".#..#..."
     "........"},
    {U'$',
     "...#...."
     ".#####.."
     "#..#...."
     ".####..."
     "...#..#."
     "#####..."
     "...#...."
     "........"},
    {U'%',
     "##....#."
     "##...#.."
     "....#..."
     "...#...."
     "..#....."
     ".#...##."
     "#....##."
     "........"},
    {U'&',
     ".##....."
     "#..#...."
     "#..#...."
     ".##....."
     "#..#.#.."
     "#...#..."
     ".###.#.."
     "........"},
    {U'\'',
     "...#...."
     "...#...."
     "...#...."
     "........"
     "........"
     "........"
     "........"
     "........"},
    {U'(',
     "....#..."
     "...#...."
     "..#....."
     "..#....."
     "..#....."
     "...#...."
     "....#..."
     "........"},
    {U')',
     "..#....."
     "...#...."
     "....#..."
     "....#..."
     "....#..."
     "...#...."
     "..#....."
     "........"},
    {U'*',
     "........"
     "..#.#..."
     "...#...."
     ".#####.."
     "...#...."
     "..#.#..."
     "........"
     "........"},
    {U'+',
     "........"
     "...#...."
     "...#...."
     ".#####.."
     "...#...."
     "...#...."
     "........"
     "........"},
    {U',',
     "........"
     "........"
     "........"
     "........"
     "........"
     "...#...."
     "...#...."
     "..#....."},
    {U'-',
     "........"
     "........"
     "........"
     ".#####.."
     "........"
     "........"
     "........"
     "........"},
    {U'.',
     "........"
     "........"
     "........"
     "........"
     "........"
     "..##...."
     "..##...."
     "........"},
    {U'/',
     "......#."
     ".....#.."
     "....#..."
     "...#...."
     "..#....."
     ".#......"
     "#......."
     "........"},
    {U'0',
     ".#####.."
     "#.....#."
     "#....##."
     "#..#..#."
     "##....#."
     "#.....#."
     ".#####.."
     "........"},
    {U'1',
     "...#...."
     "..##...."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     ".#####.."
     "........"},
    {U'2',
     ".#####.."
     "#.....#."
     "......#."
     "....##.."
     "..##...."
     "##......"
     "#######."
     "........"},
    {U'3',
     ".#####.."
     "#.....#."
     "......#."
     "...###.."
     "......#."
     "#.....#."
     ".#####.."
     "........"},
    {U'4',
     "....##.."
     "...#.#.."
     "..#..#.."
     ".#...#.."
     "#######."
     ".....#.."
     ".....#.."
     "........"},
    {U'5',
     "#######."
     "#......."
     "#......."
     "######.."
     "......#."
     "#.....#."
     ".#####.."
     "........"},
    {U'6',
     ".#####.."
     "#......."
     "#......."
     "######.."
     "#.....#."
     "#.....#."
     ".#####.."
     "........"},
    {U'7',
     "#######."
     "......#."
     ".....#.."
     "....#..."
     "...#...."
     "..#....."
     "..#....."
     "........"},
    {U'8',
     ".#####.."
     "#.....#."
     "#.....#."
     ".#####.."
     "#.....#."
     "#.....#."
     ".#####.."
     "........"},
    {U'9',
     ".#####.."
     "#.....#."
     "#.....#."
     ".######."
     "......#."
     "......#."
     ".#####.."
     "........"},
    {U':',
     "........"
     "..##...."
     "..##...."
     "........"
     "..##...."
     "..##...."
     "........"
     "........"},
    {U';',
     "........"
     "..##...."
     "..##...."
     "........"
     "..##...."
     "...#...."
     "..#....."
     "........"},
    {U'<',
     "....#..."
     "...#...."
     "..#....."
     ".#......"
     "..#....."
     "...#...."
     "....#..."
     "........"},
    {U'=',
     "........"
     "........"
     ".#####.."
     "........"
     ".#####.."
     "........"
     "........"
     "........"},
    {U'>',
     "..#....."
     "...#...."
     "....#..."
     ".....#.."
     "....#..."
     "...#...."
     "..#....."
     "........"},
    {U'?',
     ".#####.."
     "#.....#."
     "......#."
     "....##.."
     "...#...."
     "........"
     "...#...."
     "........"},
    {U'@',
     ".#####.."
     "#.....#."
     "#..####."
     "#.#...#."
     "#..####."
     "#......."
     ".#####.."
     "........"},
    {U'A',
     "..###..."
     ".#...#.."
     "#.....#."
     "#.....#."
     "#######."
     "#.....#."
     "#.....#."
     "........"},
    {U'B',
     "######.."
     "#.....#."
     "#.....#."
     "######.."
     "#.....#."
     "#.....#."
     "######.."
     "........"},
    {U'C',
     ".#####.."
     "#.....#."
     "#......."
     "#......."
     "#......."
     "#.....#."
     ".#####.."
     "........"},
    {U'D',
     "######.."
     "#.....#."
     "#.....#."
     "#.....#."
     "#.....#."
     "#.....#."
     "######.."
     "........"},
    {U'E',
     "#######."
     "#......."
     "#......."
     "#####..."
     "#......."
     "#......."
     "#######."
     "........"},
    {U'F',
     "#######."
     "#......."
     "#......."
     "#####..."
     "#......."
     "#......."
     "#......."
     "........"},
    {U'G',
     ".#####.."
     "#.....#."
     "#......."
     "#..####."
     "#.....#."
     "#.....#."
     ".#####.."
     "........"},
    {U'H',
     "#.....#."
     "#.....#."
     "#.....#."
     "#######."
     "#.....#."
     "#.....#."
     "#.....#."
     "........"},
    {U'I',
     ".#####.."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     ".#####.."
     "........"},
    {U'J',
     "..#####."
     "....#..."
     "....#..."
     "....#..."
     "....#..."
     "#...#..."
     ".###...."
     "........"},
    {U'K',
     "#....#.."
     "#...#..."
     "#..#...."
     "###....."
     "#..#...."
     "#...#..."
     "#....#.."
     "........"},
    {U'L',
     "#......."
     "#......."
     "#......."
     "#......."
     "#......."
     "#......."
     "#######."
     "........"},
    {U'M',
     "#.....#."
     "##...##."
     "#.#.#.#."
     "#..#..#."
     "#.....#."
     "#.....#."
     "#.....#."
     "........"},
    {U'N',
     "#.....#."
     "##....#."
     "#.#...#."
     "#..#..#."
     "#...#.#."
     "#....##."
     "#.....#."
     "........"},
    {U'O',
     ".#####.."
     "#.....#."
     "#.....#."
     "#.....#."
     "#.....#."
     "#.....#."
     ".#####.."
     "........"},
    {U'P',
     "######.."
     "#.....#."
     "#.....#."
     "######.."
     "#......."
     "#......."
     "#......."
     "........"},
    {U'Q',
     ".#####.."
     "#.....#."
     "#.....#."
     "#.....#."
     "#...#.#."
     "#....#.."
     ".####.#."
     "........"},
    {U'R',
     "######.."
     "#.....#."
     "#.....#."
     "######.."
     "#...#..."
     "#....#.."
     "#.....#."
     "........"},
    {U'S',
     ".#####.."
     "#.....#."
     "#......."
     ".#####.."
     "......#."
     "#.....#."
     ".#####.."
     "........"},
    {U'T',
     "#######."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "........"},
    {U'U',
     "#.....#."
     "#.....#."
     "#.....#."
     "#.....#."
     "#.....#."
     "#.....#."
     ".#####.."
     "........"},
    {U'V',
     "#.....#."
     "#.....#."
     "#.....#."
     ".#...#.."
     ".#...#.."
     "..#.#..."
     "...#...."
     "........"},
    {U'W',
     "#.....#."
     "#.....#."
     "#.....#."
     "#..#..#."
     "#.#.#.#."
     "##...##."
     "#.....#."
     "........"},
    {U'X',
     "#.....#."
     ".#...#.."
     "..#.#..."
     "...#...."
     "..#.#..."
     ".#...#.."
     "#.....#."
     "........"},
    {U'Y',
     "#.....#."
     ".#...#.."
     "..#.#..."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "........"},
    {U'Z',
     "#######."
     ".....#.."
     "....#..."
     "...#...."
     "..#....."
     ".#......"
     "#######."
     "........"},
    {U'[',
     "..###..."
     "..#....."
     "..#....."
     "..#....."
     "..#....."
     "..#....."
     "..###..."
     "........"},
    {U'\\',
     "#......."
     ".#......"
     "..#....."
     "...#...."
     "....#..."
     ".....#.."
     "......#."
     "........"},
    {U']',
     "..###..."
     "....#..."
     "....#..."
     "....#..."
     "....#..."
     "....#..."
     "..###..."
     "........"},
    {U'^',
     "...#...."
     "..#.#..."
     ".#...#.."
     "........"
     "........"
     "........"
     "........"
     "........"},
    {U'_',
     "........"
     "........"
     "........"
     "........"
     "........"
     "........"
     "........"
     "#######."},
    {U'`',
     "..#....."
     "...#...."
     "........"
     "........"
     "........"
     "........"
     "........"
     "........"},
    {U'a',
     "........"
     "........"
     ".####..."
     ".....#.."
     ".#####.."
     "#....#.."
     ".####.#."
     "........"},
    {U'b',
     "#......."
     "#......."
     "#####..."
     "#....#.."
     "#....#.."
     "#....#.."
     "#####..."
     "........"},
    {U'c',
     "........"
     "........"
     ".####..."
     "#....#.."
     "#......."
     "#....#.."
     ".####..."
     "........"},
    {U'd',
     ".....#.."
     ".....#.."
     ".#####.."
     "#....#.."
     "#....#.."
     "#....#.."
     ".#####.."
     "........"},
    {U'e',
     "........"
     "........"
     ".####..."
     "#....#.."
     "######.."
     "#......."
     ".####..."
     "........"},
    {U'f',
     "...##..."
     "..#....."
     ".####..."
     "..#....."
     "..#....."
     "..#....."
     "..#....."
     "........"},
    {U'g',
     "........"
     "........"
     ".#####.."
     "#....#.."
     "#....#.."
     ".#####.."
     ".....#.."
     ".####..."},
    {U'h',
     "#......."
     "#......."
     "#####..."
     "#....#.."
     "#....#.."
     "#....#.."
     "#....#.."
     "........"},
    {U'i',
     "...#...."
     "........"
     "..##...."
     "...#...."
     "...#...."
     "...#...."
     "..###..."
     "........"},
    {U'j',
     "....#..."
     "........"
     "...##..."
     "....#..."
     "....#..."
     "....#..."
     "#...#..."
     ".###...."},
    {U'k',
     "#......."
     "#......."
     "#...#..."
     "#..#...."
     "###....."
     "#..#...."
     "#...#..."
     "........"},
    {U'l',
     "..##...."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "..###..."
     "........"},
    {U'm',
     "........"
     "........"
     "##.##..."
     "#.#.#.#."
     "#.#.#.#."
     "#.#.#.#."
     "#.#.#.#."
     "........"},
    {U'n',
     "........"
     "........"
     "#####..."
     "#....#.."
     "#....#.."
     "#....#.."
     "#....#.."
     "........"},
    {U'o',
     "........"
     "........"
     ".####..."
     "#....#.."
     "#....#.."
     "#....#.."
     ".####..."
     "........"},
    {U'p',
     "........"
     "........"
     "#####..."
     "#....#.."
     "#....#.."
     "#####..."
     "#......."
     "#......."},
    {U'q',
     "........"
     "........"
     ".#####.."
     "#....#.."
     "#....#.."
     ".#####.."
     ".....#.."
     ".....#.."},
    {U'r',
     "........"
     "........"
     "#.###..."
     "##...#.."
     "#......."
     "#......."
     "#......."
     "........"},
    {U's',
     "........"
     "........"
     ".#####.."
     "#......."
     ".####..."
     ".....#.."
     "#####..."
     "........"},
    {U't',
     "..#....."
     "..#....."
     ".####..."
     "..#....."
     "..#....."
     "..#....."
     "...##..."
     "........"},
    {U'u',
     "........"
     "........"
     "#....#.."
     "#....#.."
     "#....#.."
     "#....#.."
     ".####.#."
     "........"},
    {U'v',
     "........"
     "........"
     "#.....#."
     ".#...#.."
     ".#...#.."
     "..#.#..."
     "...#...."
     "........"},
    {U'w',
     "........"
     "........"
     "#.#.#.#."
     "#.#.#.#."
     "#.#.#.#."
     "#.#.#.#."
     ".##.##.."
     "........"},
    {U'x',
     "........"
     "........"
     "#....#.."
     ".#..#..."
     "..##...."
     ".#..#..."
     "#....#.."
     "........"},
    {U'y',
     "........"
     "........"
     "#....#.."
     "#....#.."
     "#....#.."
     ".#####.."
     ".....#.."
     ".####..."},
    {U'z',
     "........"
     "........"
     "######.."
     "....#..."
     "...#...."
     "..#....."
     "######.."
     "........"},
    {U'{',
     "....##.."
     "...#...."
     "...#...."
     "..#....."
     "...#...."
     "...#...."
     "....##.."
     "........"},
    {U'|',
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "...#...."
     "........"},
    {U'}',
     "..##...."
     "....#..."
     "....#..."
     ".....#.."
     "....#..."
     "....#..."
     "..##...."
     "........"},
    {U'~',
     "........"
     "........"
     ".##...#."
     "#..#..#."
     "#...##.."
     "........"
     "........"
     "........"},
};

class BuiltinFont final : public GlyphRasterizer {
 public:
  BuiltinFont() {
    for (const auto& def : kGlyphs) {
      std::vector<std::uint8_t> cells(64, 0);
      for (int i = 0; i < 64; ++i) cells[i] = def.art[i] == '#' ? 1 : 0;
      glyphs_.emplace(def.code, std::move(cells));
    }
  }

  int cell_width() const override { return 8; }
  int cell_height() const override { return 8; }

  bool has_glyph(char32_t c) const override { return glyphs_.count(c) > 0; }

  std::vector<std::uint8_t> glyph(char32_t c) const override {
    const auto it = glyphs_.find(c);
    if (it == glyphs_.end())
      throw UnsupportedCharacterError("no glyph for code point " +
                                      std::to_string(static_cast<int>(c)));
    return it->second;
  }

 private:
  std::map<char32_t, std::vector<std::uint8_t>> glyphs_;
};

}  // namespace

const GlyphRasterizer& builtin_font() {
  static const BuiltinFont font;
  return font;
}

}  // namespace flowtext
