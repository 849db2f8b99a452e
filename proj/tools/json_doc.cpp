#include "json_doc.hpp"

#include "superdiff/text.hpp"

namespace superdiff::cli {

namespace {

Json indices(IndexSet s)
{
	Json a = Json::array();
	for (unsigned i : s.indices())
		a.push_back(i);
	return a;
}

Json terms(Superfunction const &f)
{
	Json out = Json::array();
	for (auto const &[key, poly] : f.terms())
		for (auto const &[e, c] : poly.terms())
			out.push_back(Json{{"coefficient", c.get_str()}, {"x", e.powers}, {"theta", indices(key.theta)},
			                   {"tau", indices(key.tau)}});
	return out;
}

Json images(std::vector<Superfunction> const &xs, std::vector<Superfunction> const &ths)
{
	Json out = Json::array();
	for (std::size_t i = 0; i < xs.size(); ++i)
		out.push_back(Json{{"generator", "x" + std::to_string(i + 1)}, {"image", to_json(xs[i])}});
	for (std::size_t j = 0; j < ths.size(); ++j)
		out.push_back(Json{{"generator", "th" + std::to_string(j + 1)}, {"image", to_json(ths[j])}});
	return out;
}

} // namespace

Json to_json(Dims d) { return Json{{"m", d.m}, {"n", d.n}, {"p", d.p}}; }

Json to_json(Superfunction const &f)
{
	return Json{{"kind", "superfunction"}, {"dims", to_json(f.dims())}, {"text", print(f)}, {"terms", terms(f)}};
}

Json to_json(SuperDerivation const &x)
{
	Json comps = Json::array();
	for (unsigned i = 1; i <= x.dims().m; ++i)
		if (!x.on_x(i).is_zero())
			comps.push_back(Json{{"slot", "d/dx" + std::to_string(i)}, {"coefficient", to_json(x.on_x(i))}});
	for (unsigned j = 1; j <= x.dims().n; ++j)
		if (!x.on_theta(j).is_zero())
			comps.push_back(Json{{"slot", "d/dth" + std::to_string(j)}, {"coefficient", to_json(x.on_theta(j))}});
	Json out{{"kind", "vector_field"}, {"dims", to_json(x.dims())}};
	if (auto p = x.parity())
		out["parity"] = *p;
	else
		out["parity"] = nullptr;
	out["text"] = print(x);
	out["components"] = std::move(comps);
	return out;
}

Json to_json(SuperMorphism const &phi)
{
	Json out{{"kind", "morphism"}, {"dims", to_json(phi.dims())}, {"images", images(phi.images_x(), phi.images_th())}};
	if (phi.has_body_inverse())
	{
		SuperMorphism inv = invert(phi);
		out["inverse"] = images(inv.images_x(), inv.images_th());
	}
	else
		out["inverse"] = nullptr;
	return out;
}

Json to_json(UnderlyingMorphism const &phi)
{
	Json out{{"kind", "morphism"}, {"dims", to_json(phi.dims())}, {"images", images(phi.images_x(), phi.images_th())}};
	if (phi.has_inverse())
		out["inverse"] = images(phi.inverse().images_x(), phi.inverse().images_th());
	else
		out["inverse"] = nullptr;
	return out;
}

Json to_json(FactoredForm const &form)
{
	Json fields = Json::array();
	for (auto const &[index, x] : form.fields)
		fields.push_back(Json{{"index", indices(index)}, {"field", to_json(x)}});
	return Json{{"kind", "factored"}, {"p", form.p}, {"phi0", to_json(form.body)}, {"fields", std::move(fields)}};
}

Json to_json(SplitPoint const &s)
{
	return Json{{"kind", "split"}, {"nil", to_json(s.nil)}, {"body", to_json(s.body)}};
}

Json to_json(SelftestReport const &r)
{
	Json props = Json::array();
	for (auto const &p : r.properties)
	{
		Json j{{"name", p.name}, {"passed", p.passed}, {"failed", p.failed}};
		j["first_failure"] = p.failed ? Json(p.first_failure) : Json(nullptr);
		props.push_back(std::move(j));
	}
	return Json{{"kind", "selftest"}, {"seed", r.seed}, {"count", r.count}, {"ok", r.ok()}, {"properties", props}};
}

} // namespace superdiff::cli
