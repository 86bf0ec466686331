#include "polaron/numerics/zakian.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace polaron::numerics {
namespace {

struct Entry {
  std::complex<double> weight;
  std::complex<double> node;
};

// Generated at 60 significant digits from the [2N-1/2N] Pade approximant of exp(s).
constexpr Entry kOrder5[] = {
    {{-36902.0468800255509112, 196990.463529003640411}, {12.8376770778108702592, 1.66606258416230130012}},
    {{61276.9997058515059254, -95408.5989073240257154}, {12.226131484162150028, 5.01271926367686445573}},
    {{-28916.5722703242320366, 18169.1851000964418714}, {10.9343034306000097413, 8.40967299600309165165}},
    {{4655.36084639817354492, -1.90177303058301391684}, {8.77643464008260864815, 11.9218538983012136861}},
    {{-118.741401899896522493, -141.30369232172346815}, {5.22545336734436132331, 15.7295290456392585867}},
};

constexpr Entry kOrder6[] = {
    {{-521912.056520779474904, 2840947.57369523341891}, {15.5003991084163575508, 1.67740907542671540851}},
    {{941733.18462160953565, -1515550.73373935352472}, {14.9894720849360656767, 5.04267301319419835407}},
    {{-540875.915592674743455, 373470.946051151665327}, {13.9287203046513791211, 8.44249696607331075736}},
    {{131630.215740166838968, -15802.4463595246673875}, {12.2232279801269360226, 11.9133708537901617865}},
    {{-10601.1986654066470028, -5994.71349016484979279}, {9.66460291603877700991, 15.5269887259769014472}},
    {{19.7704170844907442616, 316.226175536523289675}, {5.69357760583048461882, 19.4846293682976858015}},
};

constexpr Entry kOrder7[] = {
    {{-7386335.5404403233093, 40774780.0012043244157}, {18.1598875734216217401, 1.68556744734413276087}},
    {{14168955.4604889736883, -23329173.8811528731996}, {17.7208535297202968237, 5.06457474842360918959}},
    {{-9344059.27331187024381, 6841786.27391215390386}, {16.8185419175290505293, 8.46894658268211214862}},
    {{2954284.86151678801658, -561988.920836155568393}, {15.3970406475504671105, 11.9224339983808453458}},
    {{-407088.889354343301491, -147454.862201130582139}, {13.3474860189496451425, 15.4639361328642102583}},
    {{13950.679653727644564, 24654.9472543650475381}, {10.4466532469180927818, 19.1718385658013615744}},
    {{285.70144704750512908, -422.573770319719615426}, {6.1095370659108258722, 23.2659732506468929073}},
};

constexpr Entry kOrder8[] = {
    {{-104572705.760699539505, 583415465.345084320837}, {20.8173162164223365839, 1.69171634288156037705}},
    {{210257243.438444969271, -352009232.558807730107}, {20.4322976983797762903, 5.08129533989982378909}},
    {{-153739970.730194594832, 117150181.849000320089}, {19.6460974294032679428, 8.49034449412191904174}},
    {{58439638.9200107849663, -13827169.2287379017107}, {18.4227188449675243325, 11.935724977767442262}},
    {{-11218725.5804618378092, -2859042.07613255212275}, {16.6967416372793806575, 15.4420808926594419552}},
    {{832343.312083687055687, 923999.525970579207995}, {14.3502762938985035086, 19.0510873589179585137}},
    {{2915.07593846542908403, -60253.3142149703376429}, {11.1489235551544330419, 22.8473895039123556217}},
    {{-746.675121934575950394, 233.418714875682521568}, {6.4856283244947776425, 27.0674101802451646569}},
};

template <std::size_t N>
ZakianConstants build(const Entry (&table)[N]) {
  ZakianConstants c;
  for (const auto& e : table) {
    c.weights.push_back(e.weight);
    c.nodes.push_back(e.node);
  }
  validate(c);
  return c;
}

}  // namespace

const ZakianConstants& ZakianConstants::of_order(int n) {
  static const ZakianConstants c5 = build(kOrder5);
  static const ZakianConstants c6 = build(kOrder6);
  static const ZakianConstants c7 = build(kOrder7);
  static const ZakianConstants c8 = build(kOrder8);
  switch (n) {
    case 5: return c5;
    case 6: return c6;
    case 7: return c7;
    case 8: return c8;
    default: throw InvalidArgument("Zakian order must be in [5, 8], got " + std::to_string(n));
  }
}

const ZakianConstants& ZakianConstants::standard() { return of_order(7); }

double unit_step_deviation(const ZakianConstants& consts) {
  double worst = 0.0;
  constexpr int kPoints = 25;
  for (int i = 0; i < kPoints; ++i) {
    const double t = 0.1 * std::pow(100.0, static_cast<double>(i) / (kPoints - 1));
    const double f = zakian_invert([](std::complex<double> s) { return 1.0 / s; }, t, consts);
    worst = std::max(worst, std::abs(f - 1.0));
  }
  return worst;
}

void validate(const ZakianConstants& consts, double tolerance) {
  if (consts.weights.size() != consts.nodes.size() || consts.nodes.empty()) {
    throw InvalidArgument("Zakian weights and nodes must be non-empty and of equal length");
  }
  const double dev = unit_step_deviation(consts);
  if (dev > tolerance) {
    throw NumericalError("Zakian constants fail the unit-step self-test (deviation " +
                         std::to_string(dev) + ")");
  }
}

}  // namespace polaron::numerics
