#include "cli.hpp"

#include "json_doc.hpp"

#include "superdiff/error.hpp"
#include "superdiff/random.hpp"
#include "superdiff/sdiff.hpp"
#include "superdiff/sections.hpp"
#include "superdiff/selftest.hpp"
#include "superdiff/text.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace superdiff::cli {

namespace {

struct IoError : Error
{
	using Error::Error;
};

struct NotInvertible : Error
{
	using Error::Error;
};

struct Input
{
	std::string name;
	std::string text;
};

class Context {
  public:
	Context(std::istream &in, std::ostream &out, bool doc) : in_(in), out_(out), doc_(doc) {}

	Input read(std::string const &name)
	{
		if (name == "-")
		{
			if (stdin_used_)
				throw IoError("standard input can be read only once");
			stdin_used_ = true;
			std::ostringstream ss;
			ss << in_.rdbuf();
			return {"<stdin>", ss.str()};
		}
		std::ifstream f(name, std::ios::binary);
		if (!f)
			throw IoError("cannot open '" + name + "'");
		std::ostringstream ss;
		ss << f.rdbuf();
		if (f.bad())
			throw IoError("cannot read '" + name + "'");
		return {name, ss.str()};
	}

	/// Parses with the name of the input attached to diagnostics.
	template <class F> auto parse(Input const &input, F &&f)
	{
		current_ = input.name;
		auto r = f(input.text);
		current_.clear();
		return r;
	}

	std::string const &current() const { return current_; }

	template <class T> void emit(T const &value, std::string const &text)
	{
		if (doc_)
			out_ << to_json(value).dump(2) << "\n";
		else
			out_ << text;
	}

	void emit_json(Json const &j, std::string const &text)
	{
		if (doc_)
			out_ << j.dump(2) << "\n";
		else
			out_ << text;
	}

  private:
	std::istream &in_;
	std::ostream &out_;
	bool doc_;
	bool stdin_used_ = false;
	std::string current_;
};

/// Attaches a certified body inverse if one can be found.
SuperMorphism canonical_point(SuperMorphism const &phi)
{
	if (phi.has_body_inverse())
		return phi;
	InvertibilityVerdict v = is_invertible(phi);
	if (!v)
		return phi;
	return phi.with_body_inverse(v.certified->inverse());
}

SuperMorphism require_point(SuperMorphism const &phi)
{
	if (phi.has_body_inverse())
		return phi;
	InvertibilityVerdict v = is_invertible(phi);
	if (v.status == Invertibility::not_invertible)
		throw NotInvertible("morphism is not invertible: " + v.reason);
	if (!v)
		throw InvertibilityError("invertibility unknown: " + v.reason);
	return phi.with_body_inverse(v.certified->inverse());
}

Dims joint_dims(Context &ctx, std::vector<Input> const &inputs)
{
	Dims d;
	for (auto const &in : inputs)
		d = join(d, ctx.parse(in, [](std::string const &s) { return infer_dims(s); }));
	return d;
}

std::string print_text(SuperMorphism const &phi) { return print_morphism(phi); }

int cmd_compose(Context &ctx, std::vector<std::string> const &files)
{
	std::vector<Input> inputs;
	for (auto const &f : files)
		inputs.push_back(ctx.read(f));
	Dims d = joint_dims(ctx, inputs);
	std::optional<SuperMorphism> acc;
	for (auto const &in : inputs)
	{
		// split documents are recombined first
		SuperMorphism phi = ctx.parse(in, [&](std::string const &s) {
			if (detect_kind(s) == DocumentKind::split)
				return recombine(parse_split(s, d));
			return parse_morphism(s, d);
		});
		phi = canonical_point(phi);
		acc = acc ? compose(*acc, phi) : phi;
	}
	SuperMorphism r = canonical_point(*acc);
	ctx.emit(r, print_text(r));
	return exit_ok;
}

SuperMorphism read_point(Context &ctx, std::string const &file)
{
	Input in = ctx.read(file);
	return ctx.parse(in, [](std::string const &s) { return parse_morphism(s); });
}

int cmd_invert(Context &ctx, std::string const &file)
{
	SuperMorphism r = invert(require_point(read_point(ctx, file)));
	ctx.emit(r, print_text(r));
	return exit_ok;
}

int cmd_factorize(Context &ctx, std::string const &file)
{
	FactoredForm f = factorize(require_point(read_point(ctx, file)));
	ctx.emit(f, print_factored(f));
	return exit_ok;
}

int cmd_expand(Context &ctx, std::string const &file)
{
	Input in = ctx.read(file);
	FactoredForm f = ctx.parse(in, [](std::string const &s) { return parse_factored(s); });
	SuperMorphism r = canonical_point(expand_factored(f));
	ctx.emit(r, print_text(r));
	return exit_ok;
}

int cmd_split(Context &ctx, std::string const &file)
{
	SplitPoint s = split(require_point(read_point(ctx, file)));
	ctx.emit(s, print_split(s));
	return exit_ok;
}

int cmd_push(Context &ctx, std::string const &map_file, std::string const &point_file)
{
	Input map_in = ctx.read(map_file);
	GrassmannMorphism mor = ctx.parse(map_in, [](std::string const &s) { return parse_grassmann_morphism(s); });
	SuperMorphism phi = canonical_point(read_point(ctx, point_file));
	SuperMorphism r = canonical_point(functor_map(mor, phi));
	ctx.emit(r, print_text(r));
	return exit_ok;
}

int cmd_apply(Context &ctx, std::string const &op_file, std::string const &fn_file)
{
	Input op = ctx.read(op_file), fn = ctx.read(fn_file);
	Dims d = joint_dims(ctx, {op, fn});
	Superfunction result;
	if (detect_kind(op.text) == DocumentKind::morphism)
	{
		SuperMorphism phi = ctx.parse(op, [&](std::string const &s) { return parse_morphism(s, d); });
		Superfunction f = ctx.parse(fn, [&](std::string const &s) { return parse_superfunction(s, d); });
		result = hom_apply(phi, f);
	}
	else
	{
		SuperDerivation x = ctx.parse(op, [&](std::string const &s) { return parse_derivation(s, d); });
		Superfunction f = ctx.parse(fn, [&](std::string const &s) { return parse_superfunction(s, d); });
		result = der_apply(x, f);
	}
	ctx.emit(result, print(result) + "\n");
	return exit_ok;
}

int cmd_bracket(Context &ctx, std::string const &a, std::string const &b)
{
	Input ia = ctx.read(a), ib = ctx.read(b);
	Dims d = joint_dims(ctx, {ia, ib});
	SuperDerivation x = ctx.parse(ia, [&](std::string const &s) { return parse_derivation(s, d); });
	SuperDerivation y = ctx.parse(ib, [&](std::string const &s) { return parse_derivation(s, d); });
	SuperDerivation r = bracket(x, y);
	ctx.emit(r, print(r) + "\n");
	return exit_ok;
}

int cmd_exp(Context &ctx, std::string const &file, unsigned rank)
{
	Input in = ctx.read(file);
	SuperDerivation x = ctx.parse(in, [&](std::string const &s) { return parse_derivation(s, Dims{0, 0, rank}); });
	Dims d = x.dims();
	SuperMorphism r;
	if (d.p == 0)
		r = SuperMorphism::constant_family(exp_nilpotent(x), 0);
	else
	{
		std::vector<Superfunction> xs, ths;
		for (unsigned i = 1; i <= d.m; ++i)
			xs.push_back(exp_series(x, Superfunction::x(d, i)));
		for (unsigned j = 1; j <= d.n; ++j)
			ths.push_back(exp_series(x, Superfunction::theta(d, j)));
		r = canonical_point(SuperMorphism(d, std::move(xs), std::move(ths)));
	}
	ctx.emit(r, print_text(r));
	return exit_ok;
}

int cmd_log(Context &ctx, std::string const &file)
{
	SuperMorphism phi = read_point(ctx, file);
	SuperDerivation r;
	if (phi.dims().p == 0)
		r = log_unipotent(phi.underlying().without_inverse());
	else
	{
		if (!phi.underlying().is_identity())
			throw DomainError("log of a point needs an identity underlying morphism");
		r = factorize(require_point(phi)).exponent();
	}
	ctx.emit(r, print(r) + "\n");
	return exit_ok;
}

int cmd_sections(Context &ctx, unsigned m, unsigned n, unsigned p, unsigned degree)
{
	if (n > kMaxOddGenerators || p > kMaxOddGenerators || m > 64 || degree > 64)
		throw DimensionError("sections: dimensions out of range");
	auto basis = section_basis(m, n, p, degree);
	std::string text;
	Json list = Json::array();
	for (auto const &s : basis)
	{
		text += print(s.field()) + "\n";
		list.push_back(to_json(s.field()));
	}
	Json j{{"kind", "sections"}, {"dims", to_json(Dims{m, n, p})}, {"degree", degree},
	       {"count", basis.size()}, {"formula_count", section_count_formula(m, n, p, degree)},
	       {"sections", std::move(list)}};
	ctx.emit_json(j, text);
	return exit_ok;
}

int cmd_selftest(Context &ctx, std::uint64_t seed, unsigned count)
{
	SelftestReport r = run_selftest(seed, count);
	ctx.emit(r, r.to_text());
	return r.ok() ? exit_ok : exit_verification;
}

} // namespace

int run(std::vector<std::string> const &args, std::istream &in, std::ostream &out, std::ostream &err)
{
	CLI::App app{"Exact Lambda-point calculus for superdiffeomorphisms of R^{m|n}", "superdiff"};
	app.require_subcommand(1);
	std::string format = "text";
	auto add_format = [&](CLI::App *s) {
		s->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "doc"}));
	};

	std::vector<std::string> files;
	std::string a, b;
	unsigned degree = 0, rank = 0, m = 0, n = 0, p = 0, count = 100;
	std::uint64_t seed = 0;

	auto *compose_cmd = app.add_subcommand("compose", "Compose points left to right (one file: canonicalize)");
	compose_cmd->add_option("files", files, "Morphism files, '-' for stdin")->required();
	auto *invert_cmd = app.add_subcommand("invert", "Inverse of a point");
	invert_cmd->add_option("file", a)->required();
	auto *factorize_cmd = app.add_subcommand("factorize", "Factored form exp(sum t_I X_I) o phi0");
	factorize_cmd->add_option("file", a)->required();
	auto *expand_cmd = app.add_subcommand("expand", "Generator images of a factored form");
	expand_cmd->add_option("file", a)->required();
	auto *split_cmd = app.add_subcommand("split", "Nilpotent part and underlying morphism");
	split_cmd->add_option("file", a)->required();
	auto *push_cmd = app.add_subcommand("push", "Change the external algebra along a Grassmann morphism");
	push_cmd->add_option("map", a)->required();
	push_cmd->add_option("point", b)->required();
	auto *apply_cmd = app.add_subcommand("apply", "Apply a morphism or vector field to a function");
	apply_cmd->add_option("operator", a)->required();
	apply_cmd->add_option("function", b)->required();
	auto *bracket_cmd = app.add_subcommand("bracket", "Super commutator of two vector fields");
	bracket_cmd->add_option("x", a)->required();
	bracket_cmd->add_option("y", b)->required();
	auto *exp_cmd = app.add_subcommand("exp", "Exponential of a nilpotent vector field");
	exp_cmd->add_option("file", a)->required();
	exp_cmd->add_option("--rank", rank, "External rank at least");
	auto *log_cmd = app.add_subcommand("log", "Logarithm of a unipotent morphism");
	log_cmd->add_option("file", a)->required();
	auto *sections_cmd = app.add_subcommand("sections", "Basis of even Lambda_p-valued vector fields");
	sections_cmd->add_option("m", m)->required();
	sections_cmd->add_option("n", n)->required();
	sections_cmd->add_option("p", p)->required();
	sections_cmd->add_option("--degree", degree, "Polynomial degree bound");
	auto *selftest_cmd = app.add_subcommand("selftest", "Run the seeded invariant suite");
	selftest_cmd->add_option("--seed", seed);
	selftest_cmd->add_option("--count", count);
	for (auto *s : app.get_subcommands({}))
		add_format(s);

	try
	{
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	}
	catch (CLI::ParseError const &e)
	{
		int code = app.exit(e, out, err);
		return code == 0 ? exit_ok : exit_usage;
	}

	Context ctx(in, out, format == "doc");
	try
	{
		if (compose_cmd->parsed())
			return cmd_compose(ctx, files);
		if (invert_cmd->parsed())
			return cmd_invert(ctx, a);
		if (factorize_cmd->parsed())
			return cmd_factorize(ctx, a);
		if (expand_cmd->parsed())
			return cmd_expand(ctx, a);
		if (split_cmd->parsed())
			return cmd_split(ctx, a);
		if (push_cmd->parsed())
			return cmd_push(ctx, a, b);
		if (apply_cmd->parsed())
			return cmd_apply(ctx, a, b);
		if (bracket_cmd->parsed())
			return cmd_bracket(ctx, a, b);
		if (exp_cmd->parsed())
			return cmd_exp(ctx, a, rank);
		if (log_cmd->parsed())
			return cmd_log(ctx, a);
		if (sections_cmd->parsed())
			return cmd_sections(ctx, m, n, p, degree);
		if (selftest_cmd->parsed())
			return cmd_selftest(ctx, seed, count);
	}
	catch (ParseError const &e)
	{
		err << (ctx.current().empty() ? "" : ctx.current() + ": ") << e.what() << "\n";
		return exit_parse;
	}
	catch (IoError const &e)
	{
		err << "error: " << e.what() << "\n";
		return exit_io;
	}
	catch (NotInvertible const &e)
	{
		err << "error: " << e.what() << "\n";
		return exit_verification;
	}
	catch (InvertibilityError const &e)
	{
		err << "error: " << e.what() << "\n";
		return exit_invertibility_unknown;
	}
	catch (DimensionError const &e)
	{
		err << "dimension error: " << e.what() << "\n";
		return exit_dimension;
	}
	catch (ParityError const &e)
	{
		err << "parity error: " << e.what() << "\n";
		return exit_dimension;
	}
	catch (DomainError const &e)
	{
		err << "domain error: " << e.what() << "\n";
		return exit_domain;
	}
	catch (MalformedMorphismError const &e)
	{
		err << "malformed morphism: " << e.what() << "\n";
		return exit_malformed;
	}
	catch (std::exception const &e)
	{
		err << "error: " << e.what() << "\n";
		return exit_verification;
	}
	return exit_usage;
}

} // namespace superdiff::cli
