#include "cranesim/csv.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

namespace cranesim::csv {
namespace {

TEST(FormatDouble, RoundTripsExactly) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, -0.0, 12535.25}) {
    EXPECT_EQ(std::stod(format_double(v)), v) << format_double(v);
  }
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Quote, OnlyWhenNeeded) {
  EXPECT_EQ(quote("plain"), "plain");
  EXPECT_EQ(quote("a,b"), "\"a,b\"");
  EXPECT_EQ(quote("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(quote("two\nlines"), "\"two\nlines\"");
}

TEST(Writer, HeaderAndRows) {
  std::ostringstream os;
  Writer w(os);
  w.header({"name", "value", "count"});
  w.row(std::string("x,y"), 0.5, 3LL);
  EXPECT_EQ(os.str(), "name,value,count\n\"x,y\",0.5,3\n");
}

TEST(Parse, HandlesQuotedFields) {
  std::istringstream is("a,b,c\r\n\"1.5\",\"he said \"\"no\"\"\",\"multi\nline\"\r\n4,5,6\n");
  const Table t = parse(is);
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0], "1.5");
  EXPECT_EQ(t.rows[0][1], "he said \"no\"");
  EXPECT_EQ(t.rows[0][2], "multi\nline");
  EXPECT_EQ(t.numeric_column("a")[0], 1.5);
  EXPECT_EQ(t.rows[1][2], "6");
}

TEST(Parse, RejectsMalformedInput) {
  std::istringstream ragged("a,b\n1,2,3\n");
  EXPECT_THROW(parse(ragged), std::runtime_error);
  std::istringstream open_quote("a,b\n\"1,2\n");
  EXPECT_THROW(parse(open_quote), std::runtime_error);
  std::istringstream ok("a,b\n1,2\n");
  const Table t = parse(ok);
  EXPECT_THROW(t.column("missing"), std::out_of_range);
}

TEST(Parse, WriterOutputParsesBack) {
  std::stringstream ss;
  Writer w(ss);
  w.header({"k", "v"});
  w.row(std::string("comma, \"quoted\""), 1e-17);
  const Table t = parse(ss);
  EXPECT_EQ(t.rows[0][0], "comma, \"quoted\"");
  EXPECT_EQ(std::stod(t.rows[0][1]), 1e-17);
}

}  // namespace
}  // namespace cranesim::csv
