#ifndef DFREUD_DETAIL_GLAISHER_HPP
#define DFREUD_DETAIL_GLAISHER_HPP

// Glaisher-Kinkelin constant A = exp(1/12 - zeta'(-1)), 2100 significant digits.

namespace dfreud::detail {

inline constexpr int glaisher_digits = 2100;

inline constexpr const char* glaisher_literal =
    "1.28242712910062263687534256886979172776768892732500119206374002174040630885"
    "8826461129736491958202374394206461203990007489331577913627752804041590725738"
    "6172752214334327143439787335067915257366856907876561146686449997784962754518"
    "1743123946527612821380818021926451685154614391990108357373070350490388812341"
    "8813674978133050937708336822224941158748373480643999788300701255670012869941"
    "5770543205392758540581731588155481762970384743250467775147374600031616023046"
    "6132963429915580958792933634388728870198895346072523318470248900109177694171"
    "2153569193674967261270398013526526688689782188974017293758407501674721148952"
    "8881599666874316451389030696264559870469543740253099606800842447417554061490"
    "1894441393861960891296821735287986298843422036698990060698088878584958749408"
    "5307347117090132667567503310523405221054141767761563081919199971852370477613"
    "1231537413530472581981479745176102754083494314384965234139453373065832325673"
    "9549576016922564277369263588216921598707758582746957516284155064858589083412"
    "8227556209547002918593263079373376942077522290940187086951957378071130966735"
    "1770300199761916284102623752726816378229033734362580494428680534032732042900"
    "8463883911214432686459076953221598613663444420335549345954738217115917456041"
    "0100293049262511276051143616882261783870652005254769631120797365703572826638"
    "4457899280631694242451954988151325366692161252001708106116018610671004232418"
    "4175133774043481176995637808272149500265073979691441595082679140138163558926"
    "4795001229480477096481671446294713585988310136346175694514927202352832895930"
    "3815923955421876019291625627383231584901693310392651848996797903214816910231"
    "5496980369321091172952248847430505502528094970073225674771103965954171355486"
    "9284559792934109873753765251251266122540365488003226600293326253795916347346"
    "8271758618169150469200740838114315860319533176038617126076122986827366410238"
    "0484872793217317354462916731447407355759576930752550027762872758120971901008"
    "0178736211891238992025496631023303097906188395750176089318779507323548959362"
    "3591038338476240918953300311231689539454187331216482896439653125520938777622"
    "5453294160601715771267400917026957124015679396598";

}  // namespace dfreud::detail

#endif  // DFREUD_DETAIL_GLAISHER_HPP
