#include "cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result
{
	int code;
	std::string out, err;
};

class Cli : public ::testing::Test {
  protected:
	void SetUp() override
	{
		dir_ = fs::temp_directory_path() / ("superdiff_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
		                                     "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
		fs::create_directories(dir_);
	}
	void TearDown() override { fs::remove_all(dir_); }

	std::string file(std::string const &name, std::string const &text)
	{
		auto path = dir_ / name;
		std::ofstream(path) << text;
		return path.string();
	}

	Result run(std::vector<std::string> args, std::string const &stdin_text = {})
	{
		std::istringstream in(stdin_text);
		std::ostringstream out, err;
		int code = superdiff::cli::run(args, in, out, err);
		return {code, out.str(), err.str()};
	}

	fs::path dir_;
};

} // namespace

TEST_F(Cli, InvertIdentity)
{
	auto r = run({"invert", file("id.txt", "dims: 2 1 1\nx1 -> x1")});
	EXPECT_EQ(r.code, 0) << r.err;
	EXPECT_EQ(r.out, run({"compose", file("id2.txt", "dims: 2 1 1")}).out);
	EXPECT_NE(r.out.find("x2 -> x2;"), std::string::npos);
}

TEST_F(Cli, FactorizeExpandPipeline)
{
	auto pt = file("pt.txt", "dims: 2 2 2\n"
	                         "x1 -> 2*x1 + x2 + 1 + t[1]*th[1] + t[1,2]*x1*x2\n"
	                         "x2 -> x2 - t[2]*x1*th[2]\n"
	                         "th1 -> th[2] + t[1]*x2 + t[2]*x1^2\n"
	                         "th2 -> th[1] - th[2] + t[1,2]*x1*th[1]");
	auto canon = run({"compose", pt});
	ASSERT_EQ(canon.code, 0) << canon.err;
	auto fac = run({"factorize", pt});
	ASSERT_EQ(fac.code, 0) << fac.err;
	auto exp = run({"expand", "-"}, fac.out);
	ASSERT_EQ(exp.code, 0) << exp.err;
	EXPECT_EQ(exp.out, canon.out);

	// the inverse round trips through the text format too
	auto inv = run({"invert", pt});
	ASSERT_EQ(inv.code, 0);
	auto both = run({"compose", pt, file("inv.txt", inv.out)});
	EXPECT_EQ(both.out, run({"compose", file("unit.txt", "dims: 2 2 2")}).out);

	// split then recombine
	auto sp = run({"split", pt});
	ASSERT_EQ(sp.code, 0);
	EXPECT_EQ(run({"compose", file("split.txt", sp.out)}).out, canon.out);
}

TEST_F(Cli, ComposeOrder)
{
	// f o g as algebra maps: first substitute g's images, then f's
	auto f = file("f.txt", "x1 -> x1 + 1");
	auto g = file("g.txt", "x1 -> 2*x1");
	auto r = run({"compose", f, g});
	EXPECT_NE(r.out.find("x1 -> 2*x1 + 2;"), std::string::npos) << r.out;
}

TEST_F(Cli, SelftestDeterministic)
{
	auto a = run({"selftest", "--seed", "42", "--count", "5"});
	auto b = run({"selftest", "--seed", "42", "--count", "5"});
	EXPECT_EQ(a.code, 0) << a.out;
	EXPECT_EQ(a.out, b.out);
	auto c = run({"selftest", "--seed", "7", "--count", "5", "--format", "doc"});
	EXPECT_EQ(c.code, 0);
	auto j = nlohmann::json::parse(c.out);
	EXPECT_EQ(j["seed"], 7);
}

TEST_F(Cli, OtherCommands)
{
	auto phi = file("phi.txt", "x1 -> x1 + t[1]*th[1]");
	auto f = file("f.txt", "x1^2");
	auto r = run({"apply", phi, f});
	EXPECT_EQ(r.code, 0) << r.err;
	EXPECT_EQ(r.out, "x1^2 - 2*x1*th[1]*t[1]\n");

	auto x = file("x.txt", "d/dth1");
	auto y = file("y.txt", "th[1]*d/dx1");
	r = run({"bracket", x, y});
	EXPECT_EQ(r.out, "(1)*d/dx1\n");
	EXPECT_EQ(run({"apply", x, file("g.txt", "th[1,2]")}).out, "th[2]\n");

	auto nil = file("nil.txt", "(th[1,2])*d/dx1");
	auto e = run({"exp", nil});
	EXPECT_EQ(e.code, 0) << e.err;
	auto l = run({"log", file("e.txt", e.out)});
	EXPECT_EQ(l.code, 0) << l.err;
	EXPECT_EQ(l.out, "(th[1,2])*d/dx1\n");

	auto s = run({"sections", "1", "1", "1", "--degree", "0"});
	EXPECT_EQ(s.code, 0);
	EXPECT_EQ(std::count(s.out.begin(), s.out.end(), '\n'), 4);
	auto sd = nlohmann::json::parse(run({"sections", "2", "2", "2", "--degree", "1", "--format", "doc"}).out);
	EXPECT_EQ(sd["count"], sd["formula_count"]);

	auto gm = file("gm.txt", "t[1] -> t[2] + t[3]; t[2] -> -t[1]");
	auto pt = file("pt.txt", "dims: 1 1 2\nx1 -> x1 + t[1]*th[1]");
	auto pushed = run({"push", gm, pt});
	EXPECT_EQ(pushed.code, 0) << pushed.err;
	EXPECT_NE(pushed.out.find("dims: 1 1 3;"), std::string::npos);
}

TEST_F(Cli, DocumentsParse)
{
	auto pt = file("pt.txt", "dims: 1 2 2\nx1 -> 3*x1 + t[1]*th[2]\nth1 -> th[1] + t[1,2]*th[2]");
	for (std::string cmd : {"compose", "invert", "factorize", "split"})
	{
		auto r = run({cmd, pt, "--format", "doc"});
		ASSERT_EQ(r.code, 0) << cmd << r.err;
		auto j = nlohmann::json::parse(r.out);
		EXPECT_TRUE(j.contains("kind")) << cmd;
	}
}

TEST_F(Cli, ExitCodes)
{
	// 1: provably not invertible
	EXPECT_EQ(run({"invert", file("sing.txt", "x1 -> x1 + x2; x2 -> x1 + x2")}).code, 1);
	// 2: parse error with position
	auto p = run({"compose", file("bad.txt", "x1 -> th[2,1]")});
	EXPECT_EQ(p.code, 2);
	EXPECT_NE(p.err.find("indices must be strictly increasing"), std::string::npos);
	// 3: invertibility unknown
	EXPECT_EQ(run({"invert", file("sq.txt", "x1 -> x1^2")}).code, 3);
	EXPECT_EQ(run({"factorize", file("sq2.txt", "x1 -> x1^2 + t[1]*th[1]")}).code, 3);
	// 4: dimension or parity
	EXPECT_EQ(run({"compose", file("odd.txt", "x1 -> th[1]")}).code, 4);
	EXPECT_EQ(run({"compose", file("a.txt", "dims: 1 0 1"), file("b.txt", "dims: 1 0 2")}).code, 0);
	EXPECT_EQ(run({"push", file("gm.txt", "gr: 2 -> 1\nt1 -> t1"), file("c.txt", "dims: 1 1 3")}).code, 4);
	// 5: unreadable input
	EXPECT_EQ(run({"invert", (dir_ / "missing.txt").string()}).code, 5);
	EXPECT_EQ(run({"compose", "-", "-"}, "x1 -> x1").code, 5);
	// 6: usage
	EXPECT_EQ(run({}).code, 6);
	EXPECT_EQ(run({"invert"}).code, 6);
	EXPECT_EQ(run({"compose", "x", "--format", "yaml"}).code, 6);
	// 7: outside the domain of exp / log
	EXPECT_EQ(run({"exp", file("dx.txt", "d/dx1")}).code, 7);
	EXPECT_EQ(run({"log", file("notu.txt", "x1 -> 2*x1")}).code, 7);
	// 8: malformed split
	EXPECT_EQ(run({"compose", file("sp.txt", "nil: { x1 -> 2*x1 }\nbody: { x1 -> x1 }")}).code, 8);
}
