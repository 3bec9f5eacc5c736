#pragma once

#include <string>
#include <vector>

namespace qinv {

// Finite group given by its full multiplication table. Elements are the
// indices 0..n-1 and the table stores mul[a][b] = index of a*b.
struct Group {
  std::string name;
  int n = 0;
  std::vector<std::vector<int>> mul;

  int op(int a, int b) const { return mul[a][b]; }
  int identity() const;
  int inverse(int a) const;
  bool is_abelian() const;

  // Checks index ranges, a two-sided identity, inverses and associativity.
  // Returns a list of human-readable problems, empty when the table is a
  // group.
  std::vector<std::string> validate() const;

  std::string serialize() const;
  static Group parse(const std::string& text);

  static Group cyclic(int n);
  static Group sym3();
  static Group quat8();
  static Group direct_product(const Group& a, const Group& b);

  // Grammar: "Z<n>", "S3", "Q8", and 'x'-separated products such as
  // "Z2xZ2" or "Z3xS3". Case-insensitive in the letters.
  static Group from_spec(const std::string& spec);
};

}  // namespace qinv
