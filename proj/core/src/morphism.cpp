#include "superdiff/morphism.hpp"

#include "superdiff/error.hpp"
#include "superdiff/partitions.hpp"

#include <algorithm>

namespace superdiff {

SuperDerivation FactoredForm::exponent() const
{
	Dims d = body.dims().with_p(p);
	SuperDerivation sum(d);
	for (auto const &[index, x] : fields)
		sum += SuperDerivation::tau_prefixed(index, x, p);
	return sum;
}

SuperDerivation FactoredForm::field(IndexSet index) const
{
	auto it = fields.find(index);
	return it == fields.end() ? SuperDerivation(body.dims()) : it->second;
}

SuperMorphism::SuperMorphism(Dims d, std::vector<Superfunction> images_x, std::vector<Superfunction> images_th)
    : dims_(d), images_x_(std::move(images_x)), images_th_(std::move(images_th))
{
	if (images_x_.size() != d.m || images_th_.size() != d.n)
		throw DimensionError("morphism needs one image per generator");
	for (std::size_t i = 0; i < images_x_.size(); ++i)
	{
		if (!(images_x_[i].dims() == d))
			throw DimensionError("image of x" + std::to_string(i + 1) + " has the wrong shape");
		if (!images_x_[i].is_even())
			throw ParityError("image of x" + std::to_string(i + 1) + " is not even");
	}
	for (std::size_t j = 0; j < images_th_.size(); ++j)
	{
		if (!(images_th_[j].dims() == d))
			throw DimensionError("image of th" + std::to_string(j + 1) + " has the wrong shape");
		if (!images_th_[j].is_zero() && !images_th_[j].is_odd())
			throw ParityError("image of th" + std::to_string(j + 1) + " is not odd");
	}
}

SuperMorphism SuperMorphism::identity(Dims d)
{
	return constant_family(UnderlyingMorphism::identity(d.m, d.n), d.p);
}

SuperMorphism SuperMorphism::constant_family(UnderlyingMorphism const &body, unsigned p)
{
	Dims d = body.dims().with_p(p);
	std::vector<Superfunction> xs, ths;
	for (auto const &g : body.images_x())
		xs.push_back(g.lifted(d));
	for (auto const &g : body.images_th())
		ths.push_back(g.lifted(d));
	SuperMorphism phi(d, std::move(xs), std::move(ths));
	if (body.has_inverse())
		phi.body_inverse_ = body.inverse();
	phi.factored_ = FactoredForm{body, {}, p};
	return phi;
}

UnderlyingMorphism SuperMorphism::underlying() const
{
	std::vector<Superfunction> xs, ths;
	for (auto const &g : images_x_)
		xs.push_back(g.body());
	for (auto const &g : images_th_)
		ths.push_back(g.body());
	UnderlyingMorphism body(dims_.m, dims_.n, std::move(xs), std::move(ths));
	if (body_inverse_)
		return body.with_inverse(*body_inverse_);
	return body;
}

SuperMorphism SuperMorphism::with_body_inverse(UnderlyingMorphism const &inv) const
{
	UnderlyingMorphism certified = underlying().without_inverse().with_inverse(inv);
	SuperMorphism r = *this;
	r.body_inverse_ = certified.inverse();
	if (r.factored_)
		r.factored_->body = certified;
	return r;
}

SuperMorphism SuperMorphism::lifted(Dims d) const
{
	if (dims_ == d)
		return *this;
	if (!dims_.fits_in(d))
		throw DimensionError("cannot embed a morphism into a smaller algebra");
	std::vector<Superfunction> xs, ths;
	for (unsigned i = 1; i <= d.m; ++i)
		xs.push_back(i <= dims_.m ? images_x_[i - 1].lifted(d) : Superfunction::x(d, i));
	for (unsigned j = 1; j <= d.n; ++j)
		ths.push_back(j <= dims_.n ? images_th_[j - 1].lifted(d) : Superfunction::theta(d, j));
	SuperMorphism r(d, std::move(xs), std::move(ths));
	if (body_inverse_)
		r.body_inverse_ = body_inverse_->lifted(d.m, d.n);
	return r;
}

Superfunction hom_apply(SuperMorphism const &phi, Superfunction const &f)
{
	Dims fd = f.dims(), d = phi.dims();
	if (fd.m != d.m || fd.n != d.n)
		throw DimensionError("hom_apply: superdomains differ");
	if (fd.p != 0 && fd.p != d.p)
		throw DimensionError("hom_apply: external ranks differ");
	return substitute(f, phi.images_x(), phi.images_th()).lifted(d);
}

std::map<IndexSet, Superfunction> skeleton(SuperMorphism const &phi, Superfunction const &f)
{
	Superfunction image = hom_apply(phi, f);
	std::map<IndexSet, Superfunction> out;
	for (IndexSet tau : image.tau_support())
		out.emplace(tau, image.tau_component(tau));
	return out;
}

namespace {

void check_fields(UnderlyingMorphism const &phi0, std::map<IndexSet, SuperDerivation> const &fields, unsigned p)
{
	for (auto const &[index, x] : fields)
	{
		if (index.empty())
			throw DimensionError("field index must be a nonempty subset");
		if (index.max_index() > p)
			throw DimensionError("field index t[" + index.to_string() + "] outside rank " + std::to_string(p));
		if (!(x.dims() == phi0.dims()))
			throw DimensionError("field X[" + index.to_string() + "] has the wrong shape");
		auto parity = x.parity();
		if (!x.is_zero() && parity != index.parity())
			throw ParityError("field X[" + index.to_string() + "] must have parity |I| mod 2");
	}
}

std::vector<IndexSet> subsets_by_size(unsigned p)
{
	std::vector<IndexSet> out;
	for (std::uint32_t bits = 1; bits < (std::uint32_t(1) << p); ++bits)
		out.emplace_back(bits);
	std::stable_sort(out.begin(), out.end(), [](IndexSet a, IndexSet b) {
		return a.size() != b.size() ? a.size() < b.size() : a < b;
	});
	return out;
}

} // namespace

SuperMorphism expand_factored(UnderlyingMorphism const &phi0, std::map<IndexSet, SuperDerivation> const &fields,
                              unsigned p)
{
	FactoredForm form{phi0, {}, p};
	for (auto const &[index, x] : fields)
		if (!x.is_zero())
			form.fields.emplace(index, x);
	return expand_factored(form);
}

SuperMorphism expand_factored(FactoredForm const &form)
{
	check_fields(form.body, form.fields, form.p);
	Dims d = form.body.dims().with_p(form.p);
	SuperDerivation exponent = form.exponent();
	std::vector<Superfunction> xs, ths;
	for (auto const &g : form.body.images_x())
		xs.push_back(exp_series(exponent, g.lifted(d)));
	for (auto const &g : form.body.images_th())
		ths.push_back(exp_series(exponent, g.lifted(d)));
	SuperMorphism phi(d, std::move(xs), std::move(ths));
	if (form.body.has_inverse())
		phi.body_inverse_ = form.body.inverse();
	phi.factored_ = form;
	for (auto it = phi.factored_->fields.begin(); it != phi.factored_->fields.end();)
		it = it->second.is_zero() ? phi.factored_->fields.erase(it) : std::next(it);
	return phi;
}

FactoredForm factorize(SuperMorphism const &phi)
{
	if (phi.cached_factored() && phi.cached_factored()->body.has_inverse())
		return *phi.cached_factored();

	UnderlyingMorphism raw = phi.underlying();
	InvertibilityVerdict verdict = certify_inverse(raw);
	if (!verdict)
		throw InvertibilityError("factorize: underlying morphism is not certified invertible (" +
		                         verdict.reason + ")");
	UnderlyingMorphism const &body = *verdict.certified;
	UnderlyingMorphism body_inv = body.inverted();

	Dims d = phi.dims();
	unsigned const p = d.p;
	Dims gens = d.with_p(0);

	// body applied to each generator, lifted to rank p
	std::vector<Superfunction> gen_list, body_images;
	for (unsigned i = 1; i <= d.m; ++i)
		gen_list.push_back(Superfunction::x(gens, i));
	for (unsigned j = 1; j <= d.n; ++j)
		gen_list.push_back(Superfunction::theta(gens, j));
	for (auto const &g : gen_list)
		body_images.push_back(body(g).lifted(d));

	auto image_of = [&](std::size_t k) -> Superfunction const & {
		return k < d.m ? phi.images_x()[k] : phi.images_th()[k - d.m];
	};

	FactoredForm form{body, {}, p};
	for (IndexSet index : subsets_by_size(p))
	{
		auto partitions = unordered_partitions(index);
		std::vector<Superfunction> values; // X_I(body(g)) per generator
		for (std::size_t k = 0; k < gen_list.size(); ++k)
		{
			Superfunction residual = Superfunction::tau_prefixed(index, image_of(k).tau_component(index), p);
			for (auto const &blocks : partitions)
			{
				if (blocks.size() < 2)
					continue;
				std::vector<PrefixedOperator> ops;
				bool vanishes = false;
				for (IndexSet b : blocks)
				{
					auto it = form.fields.find(b);
					if (it == form.fields.end())
					{
						vanishes = true;
						break;
					}
					ops.push_back({b, it->second.lifted(d)});
				}
				if (!vanishes)
					residual -= symmetrize_apply(ops, body_images[k]);
			}
			Superfunction value = residual.tau_component(index);
			if (!(Superfunction::tau_prefixed(index, value, p) == residual))
				throw MalformedMorphismError("factorize: residual for t[" + index.to_string() +
				                             "] is not a multiple of t_I");
			values.push_back(body_inv(value));
		}
		// Y = body^{-1} o X_I o body on generators, then X_I = body o Y o body^{-1}
		std::vector<Superfunction> ev(values.begin(), values.begin() + d.m);
		std::vector<Superfunction> od(values.begin() + d.m, values.end());
		SuperDerivation y(gens, std::move(ev), std::move(od));
		SuperDerivation x = pushforward(body_inv, y);
		if (x.is_zero())
			continue;
		if (x.parity() != index.parity())
			throw MalformedMorphismError("factorize: extracted X[" + index.to_string() +
			                             "] has the wrong parity");
		form.fields.emplace(index, std::move(x));
	}
	return form;
}

SuperMorphism gr_push(GrassmannMorphism const &mor, SuperMorphism const &phi)
{
	if (phi.dims().p != mor.source_n())
		throw DimensionError("gr_push: external rank " + std::to_string(phi.dims().p) +
		                     " does not match morphism source " + std::to_string(mor.source_n()));
	Dims d = phi.dims().with_p(mor.target_n());
	std::vector<Superfunction> xs, ths;
	for (auto const &g : phi.images_x())
		xs.push_back(push_external(mor, g));
	for (auto const &g : phi.images_th())
		ths.push_back(push_external(mor, g));
	SuperMorphism r(d, std::move(xs), std::move(ths));
	if (phi.has_body_inverse())
		return r.with_body_inverse(phi.underlying().inverse());
	return r;
}

namespace {

using Matrix = std::vector<std::vector<Rational>>;

std::optional<Matrix> invert_matrix(Matrix a)
{
	std::size_t const n = a.size();
	Matrix inv(n, std::vector<Rational>(n, 0));
	for (std::size_t i = 0; i < n; ++i)
		inv[i][i] = 1;
	for (std::size_t col = 0; col < n; ++col)
	{
		std::size_t pivot = col;
		while (pivot < n && is_zero(a[pivot][col]))
			++pivot;
		if (pivot == n)
			return std::nullopt;
		std::swap(a[pivot], a[col]);
		std::swap(inv[pivot], inv[col]);
		Rational scale = Rational(1) / a[col][col];
		for (std::size_t k = 0; k < n; ++k)
		{
			a[col][k] *= scale;
			inv[col][k] *= scale;
		}
		for (std::size_t r = 0; r < n; ++r)
		{
			if (r == col || is_zero(a[r][col]))
				continue;
			Rational f = a[r][col];
			for (std::size_t k = 0; k < n; ++k)
			{
				a[r][k] -= f * a[col][k];
				inv[r][k] -= f * inv[col][k];
			}
		}
	}
	return inv;
}

InvertibilityVerdict unknown(std::string reason)
{
	return {Invertibility::unknown, std::nullopt, std::move(reason)};
}

} // namespace

InvertibilityVerdict certify_inverse(UnderlyingMorphism const &body)
{
	if (body.has_inverse())
	{
		try
		{
			UnderlyingMorphism c = body.without_inverse().with_inverse(body.inverse());
			return {Invertibility::invertible, std::move(c), "supplied inverse verified"};
		}
		catch (InvertibilityError const &)
		{
			return unknown("supplied inverse does not verify");
		}
	}

	unsigned const m = body.m(), n = body.n();
	Dims d = body.dims();
	Exponent zero{std::vector<std::uint32_t>(m, 0)};

	// reduced x-part must be affine: x_i -> sum_j A_ij x_j + b_i
	Matrix a(m, std::vector<Rational>(m, 0));
	std::vector<Rational> b(m, 0);
	bool affine_x = true;
	for (unsigned i = 0; i < m; ++i)
	{
		Superfunction reduced = reduce_mod_j(body.images_x()[i], 1);
		for (auto const &[key, poly] : reduced.terms())
			for (auto const &[e, c] : poly.terms())
			{
				unsigned deg = e.degree();
				if (deg == 0)
					b[i] = c;
				else if (deg == 1)
				{
					auto it = std::find(e.powers.begin(), e.powers.end(), 1u);
					a[i][std::size_t(it - e.powers.begin())] = c;
				}
				else
					affine_x = false;
			}
	}

	// linear th-part must have constant coefficients: th_j -> sum_k B_jk th_k
	Matrix bm(n, std::vector<Rational>(n, 0));
	bool constant_th = true;
	for (unsigned j = 0; j < n; ++j)
	{
		Superfunction lin = reduce_mod_j(body.images_th()[j], 2);
		for (auto const &[key, poly] : lin.terms())
		{
			if (poly.degree() > 0)
			{
				constant_th = false;
				continue;
			}
			unsigned k = key.theta.indices().front();
			bm[j][k - 1] = poly.constant_term();
		}
	}

	std::optional<Matrix> a_inv, b_inv;
	if (affine_x)
	{
		a_inv = invert_matrix(a);
		if (!a_inv)
			return {Invertibility::not_invertible, std::nullopt, "reduced affine body is singular"};
	}
	if (constant_th)
	{
		b_inv = invert_matrix(bm);
		if (!b_inv)
			return {Invertibility::not_invertible, std::nullopt, "linear odd part is singular"};
	}
	if (!affine_x)
		return unknown("reduced body is not affine");
	if (!constant_th)
		return unknown("linear odd part depends on the even coordinates");

	// L^{-1}: x -> A^{-1}(x - b), th -> B^{-1} th
	std::vector<Superfunction> lx, lth;
	for (unsigned i = 0; i < m; ++i)
	{
		Superfunction img(d);
		for (unsigned j = 0; j < m; ++j)
			img += (*a_inv)[i][j] * (Superfunction::x(d, j + 1) - Superfunction::constant(d, b[j]));
		lx.push_back(std::move(img));
	}
	for (unsigned j = 0; j < n; ++j)
	{
		Superfunction img(d);
		for (unsigned k = 0; k < n; ++k)
			img += (*b_inv)[j][k] * Superfunction::theta(d, k + 1);
		lth.push_back(std::move(img));
	}
	UnderlyingMorphism l_inv(m, n, std::move(lx), std::move(lth));

	// body = U o L with U unipotent
	UnderlyingMorphism plain = body.without_inverse();
	UnderlyingMorphism u = compose(plain, l_inv);
	UnderlyingMorphism inv = l_inv;
	if (!u.is_identity())
	{
		if (!is_identity_mod_j(u, 2))
			return unknown("nilpotent remainder is not unipotent");
		UnderlyingMorphism u_inv = exp_nilpotent(-log_unipotent(u)).without_inverse();
		inv = compose(l_inv, u_inv);
	}
	try
	{
		return {Invertibility::invertible, plain.with_inverse(inv), "affine/unipotent decomposition"};
	}
	catch (InvertibilityError const &)
	{
		return unknown("candidate inverse failed verification");
	}
}

} // namespace superdiff
