#include "hopsynth/promptkit.h"

// Few-shot examples shipped with the tool; data/examples/*.jsonl hold the same records.

namespace hopsynth {

namespace {

const std::vector<FewShotExample>& mqa_topic_examples() {
    static const std::vector<FewShotExample> kExamples = {
        {{
             R"ex(The Border Surrender were an English rock band based in North London. The band members were Keith Austin (vocals and guitar), Simon Shields (vocals, guitar, bass guitar and mandolin), Johnny Manning (keyboards, melodica, glockenspiel & accordion) and Mark Austin (drums and vocals).)ex",
             R"ex(Unsane is an American noise rock trio that was formed in New York City in 1988. Its music touches on elements of hardcore punk and metal.)ex",
         },
         R"ex(Does The Border Surrender or Unsane have more members?)ex",
         R"ex(The Border Surrender)ex",
         {R"ex(The Border Surrender)ex", R"ex(Unsane)ex"}},
        {{
             R"ex(Adam Clayton Powell is a 1989 American documentary film directed by Richard Kilberg about the civil rights leader. It was nominated for an Academy Award for Best Documentary Feature.)ex",
             R"ex(The Saimaa Gesture (Finnish: "Saimaa-ilmiö" ) is a 1981 film by Finnish directors Aki and Mika Kaurismäki. It is a documentary of three Finnish rock groups aboard the steamboat SS Heinävesi on their tour around Lake Saimaa.)ex",
         },
         R"ex(Which documentary is about Finnish rock groups, Adam Clayton Powell or The Saimaa Gesture?)ex",
         R"ex(The Saimaa Gesture)ex",
         {R"ex(Adam Clayton Powell)ex", R"ex(The Saimaa Gesture)ex"}},
        {{
             R"ex(Pavel Samuilovich Urysohn (February 3, 1898 - August 17, 1924) was a Soviet mathematician who is best known for his contributions in dimension theory.)ex",
             R"ex(Leonid Anatolievich Levin is a Soviet-American mathematician and computer scientist.)ex",
         },
         R"ex(Were Pavel Urysohn and Leonid Levin known for the same type of work?)ex",
         R"ex(yes)ex",
         {R"ex(Pavel Urysohn)ex", R"ex(Leonid Levin)ex"}},
        {{
             R"ex(Steven Allan Spielberg KBE (born December 18, 1946) is an American film director, writer and producer. He directed Jaws, which is based on the 1974 novel by Peter Benchley.)ex",
             R"ex(Martin Campbell (born 24 October 1943) is a New Zealand film and television director based in the United Kingdom. He is known for having directed The Mask of Zorro as well as the James Bond films GoldenEye and Casino Royale.)ex",
         },
         R"ex(Are both the directors of Jaws and Casino Royale from the same country?)ex",
         R"ex(no)ex",
         {R"ex(the director of Jaws)ex", R"ex(the director of Casino Royale)ex"}},
    };
    return kExamples;
}

const std::vector<FewShotExample>& mqa_hyper_examples() {
    static const std::vector<FewShotExample> kExamples = {
        {{
             R"ex(The Colorado orogeny, or Colorado orogen, was an orogeny in Colorado and surrounding areas which was a part of the development of the ancestral Rockies. The eastern sector extends into the High Plains and is called the Central Plains orogeny.)ex",
             R"ex(The High Plains are a subregion of the Great Plains. From east to west, the High Plains rise in elevation from around 1,800 to 7,000 ft (550 to 2,130 m).)ex",
         },
         R"ex(What is the elevation range for the area that the eastern sector of the Colorado orogeny extends into?)ex",
         R"ex(1,800 to 7,000 ft)ex",
         {R"ex(the eastern section of the Colorado orogeny)ex", R"ex(the elevation range for the High Plains)ex"}},
        {{
             R"ex(Avidathe Pole Ivideyum is a 1985 Indian Malayalam drama film directed by K. S. Sethumadhavan and written by John Paul from the story of C. Radhakrishnan. The songs and score were composed by M. K. Arjunan.)ex",
             R"ex(M. K. Arjunan (1 March 1936 - 6 April 2020) was an Indian film and theatre composer, known for his works in Malayalam cinema and the theatre of Kerala.)ex",
         },
         R"ex(Where was the composer of film Avidathe Pole Ivideyum born?)ex",
         R"ex(1 March 1936)ex",
         {R"ex(the composer of film Avidathe Pole Ivideyum)ex", R"ex(the birthday of M. K. Arjunan)ex"}},
        {{
             R"ex(The 1997–98 NBA season was the Pacers' 22nd season in the National Basketball Association. In the off-season, the Pacers hired former Indiana State and Boston Celtics legend Larry Bird as head coach.)ex",
             R"ex(The 1997–98 NBA season was the 52nd season of the National Basketball Association. The season ended with the Chicago Bulls winning their third straight championship and sixth in the last eight years.)ex",
         },
         R"ex(The head coach during the 1997-98 Indiana Pacers season retired as a player from what NBA team?)ex",
         R"ex(Boston Celtics)ex",
         {R"ex(the 1997-98 Indiana Pacers)ex"}},
        {{
             R"ex(The Pagemaster is a 1994 American live-action/animated fantasy adventure film starring Macaulay Culkin, Christopher Lloyd, Whoopi Goldberg, Patrick Stewart, Leonard Nimoy, Frank Welker, Ed Begley Jr., and Mel Harris. The film was produced by Turner Pictures.)ex",
             R"ex(Franklin Wendell Welker (born March 12, 1946) is an American voice actor. Welker is best known for voicing Fred Jones in the Scooby-Doo franchise since its inception in 1969, and the title protagonist himself since 2002.)ex",
         },
         R"ex(The actor that voices Fred Jones in the "Scooby-Doo" franchise also appears wtih Macaulay Culkin in a 1994 adventure film produced by what company?)ex",
         R"ex(Turner Pictures)ex",
         {R"ex(Fred Jones in the "Scooby-Doo" franchise)ex", R"ex(Franklin Wendell Welker and Macaulay Culkin)ex"}},
    };
    return kExamples;
}

const std::vector<FewShotExample>& fever_examples() {
    static const std::vector<FewShotExample> kExamples = {
        {{
             R"ex(Peggy Sue Got Married is a 1986 American fantasy comedy-drama film directed by Francis Ford Coppola starring Kathleen Turner as a woman on the verge of a divorce, who finds herself transported back to the days of her senior year in high school in 1960.)ex",
             R"ex(Francis Ford Coppola (born April 7, 1939) is an American film director, producer, and screenwriter. He is considered one of the major figures of the New Hollywood filmmaking movement of the 1960s and 1970s.)ex",
         },
         R"ex(Peggy Sue Got Married was one of the most popular films in 1968.)ex",
         R"ex(NOT ENOUGH INFO)ex",
         {R"ex(Peggy Sue Got Married)ex"}},
        {{
             R"ex(Stranger Things is set in the fictional rural town of Hawkins, Indiana, in the 1980s. The nearby Hawkins National Laboratory ostensibly performs scientific research for the United States Department of Energy but secretly experiments with the paranormal and supernatural, sometimes with human test subjects.)ex",
             R"ex(Indiana is a U.S. state in the Midwestern United States. It is the 38th-largest by area and the 17th-most populous of the 50 States. Its capital and largest city is Indianapolis.)ex",
         },
         R"ex(Stranger Things is set in Bloomington, Indiana.)ex",
         R"ex(REFUTES)ex",
         {R"ex(Stranger Things)ex"}},
        {{
             R"ex(Fort Sumter is a sea fort built on an artificial island protecting Charleston, South Carolina from naval invasion. It was severely damaged during the war, left in ruins, and although there was some rebuilding, the fort as conceived was never completed.)ex",
             R"ex(Sea forts are completely surrounded by water – if not permanently, then at least at high tide (i.e. they are tidal islands). Unlike most coastal fortifications, which are on the coast, sea forts are not. Instead, they are off the coast on islands, artificial islands, or are specially built structures.)ex",
         },
         R"ex(For Sumter was never completed.)ex",
         R"ex(SUPPORTS)ex",
         {R"ex(For Sumter)ex"}},
        {{
             R"ex(Rodman Edward Serling (December 25, 1924 – June 28, 1975) was an American screenwriter, playwright, television producer, and narrator/on-screen host, best known for his live television dramas of the 1950s and his anthology television series The Twilight Zone. He was known as the "angry young man" of Hollywood, clashing with television executives and sponsors over a wide range of issues, including censorship, racism, and war.)ex",
             R"ex(The Twilight Zone (marketed as Twilight Zone for its final two seasons) is an American science fiction horror anthology television series created and presented by Rod Serling, which ran for five seasons on CBS from October 2, 1959, to June 19, 1964.)ex",
         },
         R"ex(Rod Serling clashed with people.)ex",
         R"ex(SUPPORTS)ex",
         {R"ex(Rod Serling)ex"}},
        {{
             R"ex(Liverpool Football Club is a professional football club based in Liverpool, England. The club competes in the Premier League, the top tier of English football. The club established itself as a major force in domestic and European football in the 1970s and 1980s, when Bill Shankly, Bob Paisley, Joe Fagan and Kenny Dalglish, led the club to a combined 11 League titles and four European Cups.)ex",
             R"ex(William Shankly OBE (2 September 1913 – 29 September 1981) was a Scottish football player and manager, who is best known for his time as manager of Liverpool. Shankly brought success to Liverpool, gaining promotion to the First Division and winning three League Championships and the UEFA Cup.)ex",
         },
         R"ex(Liverpool F.C. did not win a title in 2014.)ex",
         R"ex(NOT ENOUGH INFO)ex",
         {R"ex(Liverpool F.C.)ex"}},
        {{
             R"ex(Nikolaj William Coster-Waldau (born 27 July 1970) is a Danish actor and producer. He played a detective in the short-lived Fox television series New Amsterdam (2008), and appeared in the 2009 Fox television film Virtuality, originally intended as a pilot.)ex",
             R"ex(The Fox Broadcasting Company, commonly known simply as Fox and stylized in all caps as FOX, is an American commercial broadcast television network owned by Fox Corporation and headquartered in New York City, with master control operations and additional offices at the Fox Network Center in Los Angeles and the Fox Media Center in Tempe.)ex",
         },
         R"ex(Nikolaj Coster-Waldau never worked with the Fox Broadcasting Company.)ex",
         R"ex(REFUTES)ex",
         {R"ex(Nikolaj Coster-Waldau)ex", R"ex(Fox television)ex"}},
        {{
             R"ex(X-Men: Days of Future Past is a 2014 American superhero film directed and produced by Bryan Singer and written by Simon Kinberg from a story by Kinberg, Jane Goldman, and Matthew Vaughn. The film is based on the Marvel Comics superhero team The X-Men, the fifth mainline installment of the X-Men film series.)ex",
             R"ex(The X-Men are a superhero team appearing in American comic books published by Marvel Comics. Created by artist/co-plotter Jack Kirby and writer/editor Stan Lee, the team first appearing in The X-Men #1 (September 1963).)ex",
         },
         R"ex(X-Men: Days of Future Past stars Al Pacino and three cats.)ex",
         R"ex(NOT ENOUGH INFO)ex",
         {R"ex(X-Men: Days of Future Past)ex"}},
        {{
             R"ex(All My Children (often shortened to AMC) is an American television soap opera that aired on ABC from January 5, 1970, to September 23, 2011, and on The Online Network (TOLN) from April 29 to September 2, 2013, via Hulu, Hulu Plus, and iTunes. Created by Agnes Nixon, All My Children is set in Pine Valley, Pennsylvania, a fictional suburb of Philadelphia, which is modeled on the actual Philadelphia suburb of Rosemont.)ex",
             R"ex(Agnes Nixon (née Eckhardt; December 10, 1922 – September 28, 2016) was an American television writer and producer, and the creator of the ABC soap operas One Life to Live, All My Children, as well as Loving and its spin-off The City.)ex",
         },
         R"ex(All My Children was made by a television writer and producer from the United States who passed away in 2016.)ex",
         R"ex(SUPPORTS)ex",
         {R"ex(All My Children)ex", R"ex(Agnes Nixon)ex"}},
    };
    return kExamples;
}

}  // namespace

std::vector<FewShotExample> builtin_examples(TaskKind task, Relation setting) {
    check_task_setting(task, setting);
    if (is_fever(task)) return fever_examples();
    return setting == Relation::topic ? mqa_topic_examples() : mqa_hyper_examples();
}

}  // namespace hopsynth
