#include "superdiff/text.hpp"

#include "superdiff/error.hpp"
#include "superdiff/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>

namespace superdiff {

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok
{
	end,
	number,
	ident,
	plus,
	minus,
	star,
	caret,
	slash,
	lparen,
	rparen,
	lbracket,
	rbracket,
	lbrace,
	rbrace,
	semi,
	colon,
	comma,
	arrow,
};

struct Token
{
	Tok kind;
	std::string text;
	std::size_t offset;
	bool line_start; // a line break separates it from the previous token
};

[[noreturn]] void fail(std::size_t offset, std::vector<std::string> expected, std::string message)
{
	throw ParseError(ParseDiagnostic{offset, std::move(expected), std::move(message)});
}

std::vector<Token> tokenize(std::string_view src)
{
	std::vector<Token> out;
	std::size_t i = 0;
	bool newline = true;
	while (i < src.size())
	{
		char c = src[i];
		if (c == '\n')
		{
			newline = true;
			++i;
			continue;
		}
		if (std::isspace(static_cast<unsigned char>(c)))
		{
			++i;
			continue;
		}
		std::size_t start = i;
		Token t{Tok::end, {}, start, newline};
		newline = false;
		if (std::isdigit(static_cast<unsigned char>(c)))
		{
			while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
				++i;
			t.kind = Tok::number;
		}
		else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
		{
			while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
				++i;
			t.kind = Tok::ident;
		}
		else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>')
		{
			i += 2;
			t.kind = Tok::arrow;
		}
		else
		{
			++i;
			switch (c)
			{
			case '+': t.kind = Tok::plus; break;
			case '-': t.kind = Tok::minus; break;
			case '*': t.kind = Tok::star; break;
			case '^': t.kind = Tok::caret; break;
			case '/': t.kind = Tok::slash; break;
			case '(': t.kind = Tok::lparen; break;
			case ')': t.kind = Tok::rparen; break;
			case '[': t.kind = Tok::lbracket; break;
			case ']': t.kind = Tok::rbracket; break;
			case '{': t.kind = Tok::lbrace; break;
			case '}': t.kind = Tok::rbrace; break;
			case ';': t.kind = Tok::semi; break;
			case ':': t.kind = Tok::colon; break;
			case ',': t.kind = Tok::comma; break;
			default: fail(start, {}, std::string("unexpected character '") + c + "'");
			}
		}
		t.text = std::string(src.substr(start, i - start));
		out.push_back(std::move(t));
	}
	out.push_back(Token{Tok::end, {}, src.size(), true});
	return out;
}

// ---------------------------------------------------------------- AST

struct Node
{
	enum Kind
	{
		num,
		x,
		th,
		t,
		dx,
		dth,
		add,
		sub,
		neg,
		mul,
		pow
	} kind;
	std::size_t offset = 0;
	Rational q;
	unsigned index = 0;
	IndexSet set;
	std::unique_ptr<Node> a, b;
};

using NodePtr = std::unique_ptr<Node>;

struct Generator
{
	bool odd = false; // th (or t in a Grassmann map)
	unsigned index = 0;
	std::size_t offset = 0;
};

struct MorphismAst
{
	std::optional<Dims> header;
	std::vector<std::pair<Generator, NodePtr>> entries;
	std::unique_ptr<MorphismAst> inverse;
	std::size_t offset = 0;
};

struct FieldEntry
{
	IndexSet index;
	NodePtr expr;
	std::size_t offset;
};

// ---------------------------------------------------------------- parser

class Parser {
  public:
	explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

	Dims seen() const { return seen_; }
	Token const &peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
	bool at(Tok k) const { return peek().kind == k; }
	bool at_ident(std::string_view word) const { return at(Tok::ident) && peek().text == word; }

	Token const &next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

	Token const &expect(Tok k, char const *what)
	{
		if (!at(k))
			fail(peek().offset, {what}, "expected " + std::string(what) + found());
		return next();
	}

	void expect_word(std::string_view word)
	{
		if (!at_ident(word))
			fail(peek().offset, {std::string(word)}, "expected '" + std::string(word) + "'" + found());
		next();
	}

	std::string found() const
	{
		if (at(Tok::end))
			return ", found end of input";
		return ", found '" + peek().text + "'";
	}

	void expect_end()
	{
		if (!at(Tok::end))
			fail(peek().offset, {"end of input"}, "unexpected '" + peek().text + "'");
	}

	// -- expressions

	NodePtr expr()
	{
		NodePtr lhs = term();
		while (at(Tok::plus) || at(Tok::minus))
		{
			Token const &op = next();
			auto n = make(op.kind == Tok::plus ? Node::add : Node::sub, op.offset);
			n->a = std::move(lhs);
			n->b = term();
			lhs = std::move(n);
		}
		return lhs;
	}

	NodePtr term()
	{
		NodePtr lhs = unary();
		while (at(Tok::star))
		{
			Token const &op = next();
			auto n = make(Node::mul, op.offset);
			n->a = std::move(lhs);
			n->b = unary();
			lhs = std::move(n);
		}
		return lhs;
	}

	NodePtr unary()
	{
		if (at(Tok::minus))
		{
			auto n = make(Node::neg, next().offset);
			n->a = unary();
			return n;
		}
		NodePtr base = atom();
		if (at(Tok::caret))
		{
			auto n = make(Node::pow, next().offset);
			Token const &e = expect(Tok::number, "exponent");
			n->index = small_number(e, "exponent");
			n->a = std::move(base);
			return n;
		}
		return base;
	}

	NodePtr atom()
	{
		Token const &tok = peek();
		switch (tok.kind)
		{
		case Tok::number: {
			next();
			auto n = make(Node::num, tok.offset);
			mpz_class num(tok.text), den(1);
			if (at(Tok::slash) && peek(1).kind == Tok::number)
			{
				next();
				Token const &d = next();
				den = mpz_class(d.text);
				if (den == 0)
					fail(d.offset, {"nonzero denominator"}, "division by zero");
			}
			n->q = Rational(num, den);
			n->q.canonicalize();
			return n;
		}
		case Tok::lparen: {
			next();
			NodePtr inner = expr();
			expect(Tok::rparen, "')'");
			return inner;
		}
		case Tok::ident:
			return symbol();
		default:
			fail(tok.offset, {"number", "x<k>", "th[...]", "t[...]", "d/dx<k>", "d/dth<k>", "'('"},
			     "expected an operand" + found());
		}
	}

	NodePtr symbol()
	{
		Token const &tok = next();
		std::string const &w = tok.text;
		if (w == "d" && at(Tok::slash))
		{
			next();
			Token const &v = expect(Tok::ident, "dx<k> or dth<k>");
			if (auto k = suffix_index(v, "dth"))
				return leaf(Node::dth, v.offset, *k);
			if (auto k = suffix_index(v, "dx"))
				return leaf(Node::dx, v.offset, *k);
			fail(v.offset, {"dx<k>", "dth<k>"}, "expected dx<k> or dth<k> after 'd/'");
		}
		if (w == "th" || w == "t")
		{
			Node::Kind kind = w == "th" ? Node::th : Node::t;
			if (!at(Tok::lbracket))
				fail(peek().offset, {"'['"}, "expected '[' after '" + w + "'");
			auto n = make(kind, tok.offset);
			n->set = index_list();
			note(kind, n->set.max_index());
			return n;
		}
		if (auto k = suffix_index(tok, "th"))
		{
			auto n = make(Node::th, tok.offset);
			n->set = IndexSet::single(*k);
			note(Node::th, *k);
			return n;
		}
		if (auto k = suffix_index(tok, "t"))
		{
			auto n = make(Node::t, tok.offset);
			n->set = IndexSet::single(*k);
			note(Node::t, *k);
			return n;
		}
		if (auto k = suffix_index(tok, "x"))
			return leaf(Node::x, tok.offset, *k);
		fail(tok.offset, {"x<k>", "th[...]", "t[...]", "d/dx<k>", "d/dth<k>"}, "unknown symbol '" + w + "'");
	}

	/// '[' i, j, ... ']' strictly increasing, possibly empty.
	IndexSet index_list()
	{
		expect(Tok::lbracket, "'['");
		std::vector<unsigned> idx;
		if (!at(Tok::rbracket))
		{
			while (true)
			{
				Token const &num = expect(Tok::number, "index");
				unsigned k = index_value(num);
				if (!idx.empty() && k <= idx.back())
					fail(num.offset, {"index > " + std::to_string(idx.back())},
					     "indices must be strictly increasing");
				idx.push_back(k);
				if (at(Tok::comma))
				{
					next();
					continue;
				}
				break;
			}
		}
		expect(Tok::rbracket, "']'");
		return IndexSet::from_indices(idx);
	}

	// -- documents

	/// Entries of a morphism block, up to '}' or end of input.
	std::unique_ptr<MorphismAst> morphism_block(bool grassmann = false)
	{
		auto ast = std::make_unique<MorphismAst>();
		ast->offset = peek().offset;
		while (!at(Tok::end) && !at(Tok::rbrace))
		{
			if (at(Tok::semi))
			{
				next();
				continue;
			}
			if (at_ident("dims") && peek(1).kind == Tok::colon)
			{
				std::size_t off = next().offset;
				next();
				if (ast->header)
					fail(off, {}, "duplicate dims header");
				Dims d;
				d.m = small_number(expect(Tok::number, "m"), "m");
				d.n = small_number(expect(Tok::number, "n"), "n");
				d.p = small_number(expect(Tok::number, "p"), "p");
				ast->header = d;
				seen_ = join(seen_, d);
			}
			else if (at_ident("inverse") && peek(1).kind == Tok::colon)
			{
				std::size_t off = next().offset;
				next();
				if (ast->inverse)
					fail(off, {}, "duplicate inverse block");
				expect(Tok::lbrace, "'{'");
				ast->inverse = morphism_block(grassmann);
				expect(Tok::rbrace, "'}'");
			}
			else
			{
				Generator g = generator(grassmann);
				expect(Tok::arrow, "'->'");
				ast->entries.emplace_back(g, expr());
			}
			separator();
		}
		return ast;
	}

	/// After an entry: ';', a line break, or the end of the block.
	void separator()
	{
		if (at(Tok::semi))
			next();
		else if (!at(Tok::end) && !at(Tok::rbrace) && !peek().line_start)
			fail(peek().offset, {"';'", "line break"}, "expected ';' between entries" + found());
	}

	Generator generator(bool grassmann)
	{
		Token const &tok = peek();
		// odd generators may also be written t[k] / th[k]
		if (tok.kind == Tok::ident && (tok.text == (grassmann ? "t" : "th")) && peek(1).kind == Tok::lbracket &&
		    peek(2).kind == Tok::number && peek(3).kind == Tok::rbracket)
		{
			next();
			next();
			unsigned k = small_number(next(), "index");
			next();
			if (k == 0)
				fail(tok.offset, {}, "generator indices start at 1");
			if (!grassmann)
				note(Node::th, k);
			return {true, k, tok.offset};
		}
		if (tok.kind == Tok::ident)
		{
			if (grassmann)
			{
				if (auto k = suffix_index(tok, "t"))
				{
					next();
					return {true, *k, tok.offset};
				}
			}
			else if (auto k = suffix_index(tok, "th"))
			{
				next();
				note(Node::th, *k);
				return {true, *k, tok.offset};
			}
			else if (auto k = suffix_index(tok, "x"))
			{
				next();
				note(Node::x, *k);
				return {false, *k, tok.offset};
			}
		}
		if (grassmann)
			fail(tok.offset, {"t<k>"}, "expected a generator t<k>" + found());
		fail(tok.offset, {"x<k>", "th<k>", "dims", "inverse"}, "expected a generator x<k> or th<k>" + found());
	}

	unsigned small_number(Token const &tok, char const *what)
	{
		if (tok.text.size() > 6)
			fail(tok.offset, {}, std::string(what) + " too large");
		return unsigned(std::stoul(tok.text));
	}

	/// Starts collecting indices into a fresh counter; returns the old one.
	Dims swap_seen(Dims d)
	{
		std::swap(d, seen_);
		return d;
	}

  private:
	NodePtr make(Node::Kind k, std::size_t off)
	{
		auto n = std::make_unique<Node>();
		n->kind = k;
		n->offset = off;
		return n;
	}

	NodePtr leaf(Node::Kind k, std::size_t off, unsigned index)
	{
		auto n = make(k, off);
		n->index = index;
		note(k, index);
		return n;
	}

	void note(Node::Kind k, unsigned index)
	{
		switch (k)
		{
		case Node::x:
		case Node::dx: seen_.m = std::max(seen_.m, index); break;
		case Node::th:
		case Node::dth: seen_.n = std::max(seen_.n, index); break;
		case Node::t: seen_.p = std::max(seen_.p, index); break;
		default: break;
		}
	}

	unsigned index_value(Token const &tok)
	{
		if (tok.text.size() > 3 || std::stoul(tok.text) == 0 || std::stoul(tok.text) > kMaxOddGenerators)
			fail(tok.offset, {"index in 1.." + std::to_string(kMaxOddGenerators)}, "index out of range");
		return unsigned(std::stoul(tok.text));
	}

	/// "x12" with prefix "x" -> 12. Only for an exact prefix followed by digits.
	std::optional<unsigned> suffix_index(Token const &tok, std::string_view prefix)
	{
		std::string_view w = tok.text;
		if (w.size() <= prefix.size() || w.substr(0, prefix.size()) != prefix)
			return std::nullopt;
		std::string_view digits = w.substr(prefix.size());
		for (char c : digits)
			if (!std::isdigit(static_cast<unsigned char>(c)))
				return std::nullopt;
		if (digits.size() > 3 || std::stoul(std::string(digits)) == 0)
			fail(tok.offset, {"index >= 1"}, "index out of range in '" + tok.text + "'");
		unsigned k = unsigned(std::stoul(std::string(digits)));
		if (prefix != "x" && prefix != "dx" && k > kMaxOddGenerators)
			fail(tok.offset, {"index in 1.." + std::to_string(kMaxOddGenerators)}, "index out of range");
		return k;
	}

	std::vector<Token> toks_;
	std::size_t pos_ = 0;
	Dims seen_{0, 0, 0};
};

// ---------------------------------------------------------------- evaluation

[[noreturn]] void type_error(std::size_t offset, std::string message)
{
	fail(offset, {}, std::move(message));
}

Value eval(Node const &n, Dims d)
{
	switch (n.kind)
	{
	case Node::num: return Superfunction::constant(d, n.q);
	case Node::x: return Superfunction::x(d, n.index);
	case Node::th: return Superfunction::monomial(d, n.set, IndexSet{});
	case Node::t:
		if (n.set.max_index() > d.p)
			throw DimensionError("external generator t[" + n.set.to_string() + "] not allowed here");
		return Superfunction::monomial(d, IndexSet{}, n.set);
	case Node::dx: return SuperDerivation::partial_x(d, n.index);
	case Node::dth: return SuperDerivation::partial_theta(d, n.index);
	case Node::neg:
		return std::visit([](auto const &v) -> Value { return -v; }, eval(*n.a, d));
	case Node::add:
	case Node::sub: {
		Value a = eval(*n.a, d), b = eval(*n.b, d);
		if (a.index() != b.index())
			type_error(n.offset, "cannot add a function and a vector field");
		bool plus = n.kind == Node::add;
		return std::visit(
		    [&](auto const &lhs) -> Value {
			    using T = std::decay_t<decltype(lhs)>;
			    T const &rhs = std::get<T>(b);
			    return plus ? lhs + rhs : lhs - rhs;
		    },
		    a);
	}
	case Node::mul: {
		Value a = eval(*n.a, d), b = eval(*n.b, d);
		if (std::holds_alternative<SuperDerivation>(a))
			type_error(n.offset, "a vector field cannot be multiplied on the right");
		Superfunction const &f = std::get<Superfunction>(a);
		if (auto const *g = std::get_if<Superfunction>(&b))
			return f * *g;
		return std::get<SuperDerivation>(b).left_multiplied(f);
	}
	case Node::pow: {
		Value a = eval(*n.a, d);
		if (std::holds_alternative<SuperDerivation>(a))
			type_error(n.offset, "a vector field cannot be raised to a power");
		return power(std::get<Superfunction>(a), n.index);
	}
	}
	throw Error("unreachable");
}

Superfunction as_function(Value v, std::size_t offset)
{
	if (std::holds_alternative<SuperDerivation>(v))
		fail(offset, {"function"}, "expected a function, found a vector field");
	return std::get<Superfunction>(std::move(v));
}

SuperDerivation as_field(Value v, Dims d, std::size_t offset)
{
	if (auto const *f = std::get_if<Superfunction>(&v))
	{
		if (!f->is_zero())
			fail(offset, {"vector field"}, "expected a vector field, found a function");
		return SuperDerivation(d);
	}
	return std::get<SuperDerivation>(std::move(v));
}

Dims resolve(Dims seen, Dims at_least, std::optional<Dims> header)
{
	Dims d = join(seen, at_least);
	if (header)
	{
		if (!seen.fits_in(*header))
			throw DimensionError("document uses generators beyond its dims header");
		d = join(d, *header);
	}
	return d;
}

struct EvaluatedMorphism
{
	std::vector<Superfunction> xs, ths;
};

EvaluatedMorphism eval_images(MorphismAst const &ast, Dims d)
{
	EvaluatedMorphism r;
	std::vector<bool> set_x(d.m, false), set_th(d.n, false);
	for (unsigned i = 1; i <= d.m; ++i)
		r.xs.push_back(Superfunction::x(d, i));
	for (unsigned j = 1; j <= d.n; ++j)
		r.ths.push_back(Superfunction::theta(d, j));
	for (auto const &[g, node] : ast.entries)
	{
		auto &slot = g.odd ? set_th : set_x;
		auto &images = g.odd ? r.ths : r.xs;
		if (slot[g.index - 1])
			fail(g.offset, {}, "generator listed twice");
		slot[g.index - 1] = true;
		images[g.index - 1] = as_function(eval(*node, d), node->offset);
	}
	return r;
}

/// Morphism with its inverse block verified and attached.
SuperMorphism build_morphism(MorphismAst const &ast, Dims d)
{
	auto img = eval_images(ast, d);
	SuperMorphism phi(d, std::move(img.xs), std::move(img.ths));
	if (!ast.inverse)
		return phi;
	if (ast.inverse->header)
		fail(ast.inverse->offset, {}, "an inverse block takes no dims header");
	auto inv_img = eval_images(*ast.inverse, d);
	SuperMorphism inv(d, std::move(inv_img.xs), std::move(inv_img.ths));
	SuperMorphism id = SuperMorphism::identity(d);
	if (!(compose(phi, inv) == id) || !(compose(inv, phi) == id))
		throw InvertibilityError("inverse block does not invert the morphism");
	return phi.with_body_inverse(inv.underlying());
}

UnderlyingMorphism build_underlying(MorphismAst const &ast, Dims d)
{
	SuperMorphism phi = build_morphism(ast, d.with_p(0));
	return phi.underlying();
}

// ---------------------------------------------------------------- printing

std::string print_monomial(Exponent const &e, IndexSet theta, IndexSet tau)
{
	std::string s;
	auto add = [&](std::string const &part) {
		if (!s.empty())
			s += '*';
		s += part;
	};
	for (std::size_t i = 0; i < e.powers.size(); ++i)
	{
		if (e.powers[i] == 0)
			continue;
		std::string v = "x" + std::to_string(i + 1);
		if (e.powers[i] > 1)
			v += "^" + std::to_string(e.powers[i]);
		add(v);
	}
	if (!theta.empty())
		add("th[" + theta.to_string() + "]");
	if (!tau.empty())
		add("t[" + tau.to_string() + "]");
	return s;
}

void append_term(std::string &out, Rational const &c, std::string const &monomial)
{
	bool negative = sgn(c) < 0;
	Rational a = abs(c);
	if (out.empty())
		out += negative ? "-" : "";
	else
		out += negative ? " - " : " + ";
	if (monomial.empty())
		out += a.get_str();
	else if (a == 1)
		out += monomial;
	else
		out += a.get_str() + "*" + monomial;
}

std::string indent(std::string const &block)
{
	std::string out;
	std::size_t start = 0;
	while (start < block.size())
	{
		std::size_t end = block.find('\n', start);
		if (end == std::string::npos)
			end = block.size();
		out += "  " + block.substr(start, end - start) + "\n";
		start = end + 1;
	}
	return out;
}

std::string image_lines(std::vector<Superfunction> const &xs, std::vector<Superfunction> const &ths)
{
	std::string out;
	for (std::size_t i = 0; i < xs.size(); ++i)
		out += "x" + std::to_string(i + 1) + " -> " + print(xs[i]) + ";\n";
	for (std::size_t j = 0; j < ths.size(); ++j)
		out += "th" + std::to_string(j + 1) + " -> " + print(ths[j]) + ";\n";
	return out;
}

std::string dims_line(Dims d)
{
	return "dims: " + std::to_string(d.m) + " " + std::to_string(d.n) + " " + std::to_string(d.p) + ";\n";
}

} // namespace

// ---------------------------------------------------------------- public API

Value parse_value(std::string_view src, Dims at_least)
{
	Parser ps(src);
	NodePtr ast = ps.expr();
	ps.expect_end();
	return eval(*ast, join(ps.seen(), at_least));
}

Superfunction parse_superfunction(std::string_view src, Dims at_least)
{
	Parser ps(src);
	NodePtr ast = ps.expr();
	ps.expect_end();
	return as_function(eval(*ast, join(ps.seen(), at_least)), ast->offset);
}

SuperDerivation parse_derivation(std::string_view src, Dims at_least)
{
	Parser ps(src);
	NodePtr ast = ps.expr();
	ps.expect_end();
	Dims d = join(ps.seen(), at_least);
	return as_field(eval(*ast, d), d, ast->offset);
}

GrassmannElement parse_grassmann(std::string_view src, unsigned n_at_least)
{
	Parser ps(src);
	NodePtr ast = ps.expr();
	ps.expect_end();
	Dims seen = ps.seen();
	if (seen.m > 0 || seen.n > 0)
		fail(ast->offset, {"t[...]"}, "a Grassmann element may only use t's");
	unsigned n = std::max(seen.p, n_at_least);
	Superfunction f = as_function(eval(*ast, Dims{0, 0, n}), ast->offset);
	GrassmannElement g(n);
	for (auto const &[key, poly] : f.terms())
		g += GrassmannElement::monomial(n, key.tau, poly.constant_term());
	return g;
}

SuperMorphism parse_morphism(std::string_view src, Dims at_least)
{
	Parser ps(src);
	auto ast = ps.morphism_block();
	ps.expect_end();
	return build_morphism(*ast, resolve(ps.seen(), at_least, ast->header));
}

FactoredForm parse_factored(std::string_view src, Dims at_least)
{
	Parser ps(src);
	std::optional<unsigned> p;
	std::unique_ptr<MorphismAst> phi0;
	std::vector<FieldEntry> fields;
	unsigned max_field_index = 0;
	while (!ps.at(Tok::end))
	{
		if (ps.at(Tok::semi))
		{
			ps.next();
			continue;
		}
		Token const &key = ps.peek();
		if (ps.at_ident("p"))
		{
			ps.next();
			ps.expect(Tok::colon, "':'");
			if (p)
				fail(key.offset, {}, "duplicate p entry");
			p = ps.small_number(ps.expect(Tok::number, "rank"), "rank");
		}
		else if (ps.at_ident("phi0"))
		{
			ps.next();
			ps.expect(Tok::colon, "':'");
			if (phi0)
				fail(key.offset, {}, "duplicate phi0 entry");
			ps.expect(Tok::lbrace, "'{'");
			phi0 = ps.morphism_block();
			ps.expect(Tok::rbrace, "'}'");
		}
		else if (ps.at_ident("X"))
		{
			ps.next();
			IndexSet index = ps.index_list();
			if (index.empty())
				fail(key.offset, {"nonempty index list"}, "fields are indexed by nonempty sets");
			ps.expect(Tok::colon, "':'");
			for (auto const &f : fields)
				if (f.index == index)
					fail(key.offset, {}, "field X[" + index.to_string() + "] listed twice");
			Dims before = ps.swap_seen(Dims{});
			NodePtr e = ps.expr();
			Dims inner = ps.swap_seen(before);
			if (inner.p > 0)
				throw DimensionError("field X[" + index.to_string() + "] may not contain external generators");
			ps.swap_seen(join(before, inner));
			max_field_index = std::max(max_field_index, index.max_index());
			fields.push_back({index, std::move(e), key.offset});
		}
		else
			fail(key.offset, {"p", "phi0", "X[...]"}, "expected a factored-form entry" + ps.found());
		ps.separator();
	}
	if (!phi0)
		fail(src.size(), {"phi0"}, "missing phi0 entry");
	Dims seen = ps.seen();
	unsigned rank = std::max({p.value_or(0), max_field_index, at_least.p});
	if (p && rank > *p)
		throw DimensionError("field index exceeds the declared rank p");
	if (phi0->header && phi0->header->p != 0)
		throw DimensionError("phi0 must not depend on external generators");
	Dims base = resolve(seen.with_p(0), at_least.with_p(0), phi0->header);
	FactoredForm form{build_underlying(*phi0, base), {}, rank};
	for (auto const &f : fields)
	{
		SuperDerivation x = as_field(eval(*f.expr, base), base, f.expr->offset);
		if (!x.is_zero())
			form.fields.emplace(f.index, std::move(x));
	}
	return form;
}

SplitPoint parse_split(std::string_view src, Dims at_least)
{
	Parser ps(src);
	std::unique_ptr<MorphismAst> nil, body;
	while (!ps.at(Tok::end))
	{
		if (ps.at(Tok::semi))
		{
			ps.next();
			continue;
		}
		Token const &key = ps.peek();
		std::unique_ptr<MorphismAst> *slot = nullptr;
		if (ps.at_ident("nil"))
			slot = &nil;
		else if (ps.at_ident("body"))
			slot = &body;
		else
			fail(key.offset, {"nil", "body"}, "expected a split entry" + ps.found());
		ps.next();
		ps.expect(Tok::colon, "':'");
		if (*slot)
			fail(key.offset, {}, "duplicate entry '" + key.text + "'");
		ps.expect(Tok::lbrace, "'{'");
		*slot = ps.morphism_block();
		ps.expect(Tok::rbrace, "'}'");
		ps.separator();
	}
	if (!nil || !body)
		fail(src.size(), {nil ? "body" : "nil"}, "split document needs nil and body entries");
	Dims d = resolve(ps.seen(), at_least, nil->header);
	if (body->header)
	{
		if (body->header->p != 0)
			throw DimensionError("body must not depend on external generators");
		d = join(d, body->header->with_p(d.p));
	}
	return SplitPoint{build_morphism(*nil, d), build_underlying(*body, d)};
}

GrassmannMorphism parse_grassmann_morphism(std::string_view src)
{
	Parser ps(src);
	while (ps.at(Tok::semi))
		ps.next();
	// without a header the ranks are read off the entries
	std::optional<std::pair<unsigned, unsigned>> ranks;
	if (ps.at_ident("gr"))
	{
		ps.next();
		ps.expect(Tok::colon, "':'");
		unsigned s = ps.small_number(ps.expect(Tok::number, "source rank"), "rank");
		ps.expect(Tok::arrow, "'->'");
		unsigned t = ps.small_number(ps.expect(Tok::number, "target rank"), "rank");
		if (s > kMaxOddGenerators || t > kMaxOddGenerators)
			throw DimensionError("Grassmann rank out of range");
		ps.separator();
		ranks.emplace(s, t);
	}
	auto ast = ps.morphism_block(true);
	ps.expect_end();
	if (!ranks)
	{
		unsigned s = 0;
		for (auto const &entry : ast->entries)
			s = std::max(s, entry.first.index);
		ranks.emplace(s, ps.seen().p);
	}
	auto const [s, t] = *ranks;
	if (ast->header || ast->inverse)
		fail(ast->offset, {"t<k> -> expr"}, "unexpected block in a Grassmann morphism");
	if (ps.seen().m > 0 || ps.seen().n > 0)
		fail(ast->offset, {"t[...]"}, "a Grassmann morphism may only use t's");
	if (ps.seen().p > t)
		throw DimensionError("image uses t beyond the target rank");
	std::vector<GrassmannElement> images;
	for (unsigned i = 1; i <= s; ++i)
		images.push_back(i <= t ? GrassmannElement::generator(t, i) : GrassmannElement(t));
	std::vector<bool> set(s, false);
	for (auto const &[g, node] : ast->entries)
	{
		if (g.index > s)
			throw DimensionError("generator t" + std::to_string(g.index) + " beyond the source rank");
		if (set[g.index - 1])
			fail(g.offset, {}, "generator listed twice");
		set[g.index - 1] = true;
		Superfunction f = as_function(eval(*node, Dims{0, 0, t}), node->offset);
		GrassmannElement e(t);
		for (auto const &[key, poly] : f.terms())
			e += GrassmannElement::monomial(t, key.tau, poly.constant_term());
		images[g.index - 1] = std::move(e);
	}
	return GrassmannMorphism(s, t, std::move(images));
}

Dims infer_dims(std::string_view src)
{
	switch (detect_kind(src))
	{
	case DocumentKind::expression: {
		Parser ps(src);
		ps.expr();
		ps.expect_end();
		return ps.seen();
	}
	case DocumentKind::morphism: return parse_morphism(src).dims();
	case DocumentKind::factored: {
		FactoredForm f = parse_factored(src);
		return f.body.dims().with_p(f.p);
	}
	case DocumentKind::split: return parse_split(src).nil.dims();
	case DocumentKind::grassmann_morphism: return Dims{0, 0, parse_grassmann_morphism(src).source_n()};
	}
	return {};
}

DocumentKind detect_kind(std::string_view src)
{
	std::vector<Token> toks;
	try
	{
		toks = tokenize(src);
	}
	catch (ParseError const &)
	{
		return DocumentKind::expression;
	}
	std::size_t i = 0;
	while (toks[i].kind == Tok::semi)
		++i;
	if (toks[i].kind == Tok::ident && toks[i + 1].kind == Tok::colon)
	{
		std::string const &w = toks[i].text;
		if (w == "gr")
			return DocumentKind::grassmann_morphism;
		if (w == "p" || w == "phi0")
			return DocumentKind::factored;
		if (w == "nil" || w == "body")
			return DocumentKind::split;
		return DocumentKind::morphism;
	}
	if (toks[i].kind == Tok::ident && toks[i].text == "X" && toks[i + 1].kind == Tok::lbracket)
		return DocumentKind::factored;
	// an entry list whose first generator is external
	bool external = toks[i].kind == Tok::ident && toks[i].text.size() >= 1 && toks[i].text[0] == 't' &&
	                toks[i].text.find_first_not_of("0123456789", 1) == std::string::npos;
	if (external)
		for (auto const &t : toks)
			if (t.kind == Tok::arrow)
				return DocumentKind::grassmann_morphism;
	for (auto const &t : toks)
		if (t.kind == Tok::arrow)
			return DocumentKind::morphism;
	return DocumentKind::expression;
}

std::string print(Superfunction const &f)
{
	std::string out;
	for (auto const &[key, poly] : f.terms())
		for (auto const &[e, c] : poly.terms())
			append_term(out, c, print_monomial(e, key.theta, key.tau));
	return out.empty() ? "0" : out;
}

std::string print(SuperDerivation const &x)
{
	std::string out;
	auto add = [&](Superfunction const &c, std::string const &slot) {
		if (c.is_zero())
			return;
		if (!out.empty())
			out += " + ";
		out += "(" + print(c) + ")*" + slot;
	};
	for (unsigned i = 1; i <= x.dims().m; ++i)
		add(x.on_x(i), "d/dx" + std::to_string(i));
	for (unsigned j = 1; j <= x.dims().n; ++j)
		add(x.on_theta(j), "d/dth" + std::to_string(j));
	return out.empty() ? "0" : out;
}

std::string print(GrassmannElement const &g)
{
	std::string out;
	Exponent none;
	for (auto const &[s, c] : g.terms())
		append_term(out, c, print_monomial(none, IndexSet{}, s));
	return out.empty() ? "0" : out;
}

std::string print(Value const &v)
{
	return std::visit([](auto const &x) { return print(x); }, v);
}

std::string print_morphism(SuperMorphism const &phi)
{
	std::string out = dims_line(phi.dims()) + image_lines(phi.images_x(), phi.images_th());
	if (phi.has_body_inverse())
	{
		SuperMorphism inv = invert(phi);
		out += "inverse: {\n" + indent(image_lines(inv.images_x(), inv.images_th())) + "};\n";
	}
	return out;
}

std::string print_morphism(UnderlyingMorphism const &phi)
{
	std::string out = dims_line(phi.dims()) + image_lines(phi.images_x(), phi.images_th());
	if (phi.has_inverse())
	{
		UnderlyingMorphism const &inv = phi.inverse();
		out += "inverse: {\n" + indent(image_lines(inv.images_x(), inv.images_th())) + "};\n";
	}
	return out;
}

std::string print_factored(FactoredForm const &form)
{
	std::string out = "p: " + std::to_string(form.p) + ";\n";
	out += "phi0: {\n" + indent(print_morphism(form.body)) + "};\n";
	for (auto const &[index, x] : form.fields)
		out += "X[" + index.to_string() + "]: " + print(x) + ";\n";
	return out;
}

std::string print_split(SplitPoint const &s)
{
	return "nil: {\n" + indent(print_morphism(s.nil)) + "};\nbody: {\n" + indent(print_morphism(s.body)) + "};\n";
}

std::string print_grassmann_morphism(GrassmannMorphism const &mor)
{
	std::string out = "gr: " + std::to_string(mor.source_n()) + " -> " + std::to_string(mor.target_n()) + ";\n";
	for (std::size_t i = 0; i < mor.images().size(); ++i)
		out += "t" + std::to_string(i + 1) + " -> " + print(mor.images()[i]) + ";\n";
	return out;
}

} // namespace superdiff
