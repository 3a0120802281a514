#pragma once

// Canonical phrasing plus at least one paraphrase for every template,
// with the slots each one must extract. Shared between the parser tests
// and the acceptance suite.

#include <map>
#include <string>
#include <vector>

namespace ahab::test {

struct TemplateCase {
    std::string question;
    std::string template_id;
    std::map<std::string, std::string> slots; // slot name -> captured lemma phrase
};

inline const std::vector<TemplateCase>& template_corpus() {
    static const std::vector<TemplateCase> cases = {
        // canonical, then a paraphrase, for each of the 23 single-image
        // templates and the two two-image extensions
        {"Is there any dog?", "IsThereAny", {{"concept", "dog"}}},
        {"Do you see any dog in this image?", "IsThereAny", {{"concept", "dog"}}},
        {"Is there any herbivorous animal in this picture?", "IsThereAny",
         {{"concept", "herbivorous animal"}}},

        {"Is the image related to religion?", "IsImgRelate", {{"concept", "religion"}}},
        {"Does this image relate to religion?", "IsImgRelate", {{"concept", "religion"}}},

        {"What is the right animal?", "WhatIs", {{"obj", "right animal"}}},
        {"Describe the right animal.", "WhatIs", {{"obj", "right animal"}}},

        {"What scene does this image describe?", "ImgScene", {}},
        {"What is the scene of this image?", "ImgScene", {}},

        {"What color is the giraffe?", "ColorOf", {{"obj", "giraffe"}}},
        {"What is the color of the giraffe?", "ColorOf", {{"obj", "giraffe"}}},

        {"How many road vehicles in this image?", "HowMany", {{"concept", "road vehicle"}}},
        {"How many road vehicles are there in this image?", "HowMany",
         {{"concept", "road vehicle"}}},

        {"What is the person doing?", "ObjAction", {{"actor", "person"}}},
        {"What does the man do?", "ObjAction", {{"actor", "man"}}},

        {"Are the zebra and the giraffe the same thing?", "IsSameThing",
         {{"obj1", "zebra"}, {"obj2", "giraffe"}}},
        {"Are the left animal and the right animal the same?", "IsSameThing",
         {{"obj1", "left animal"}, {"obj2", "right animal"}}},

        {"Which animal is most related to grass?", "MostRelObj",
         {{"obj", "animal"}, {"concept", "grass"}}},
        {"Which animal relates most to grass?", "MostRelObj",
         {{"obj", "animal"}, {"concept", "grass"}}},

        {"List objects found in this image.", "ListObj", {}},
        {"What objects are found in this image?", "ListObj", {}},

        {"Is the zebra a mammal?", "IsTheA", {{"obj", "zebra"}, {"concept", "mammal"}}},
        {"Is the zebra a kind of mammal?", "IsTheA", {{"obj", "zebra"}, {"concept", "mammal"}}},

        {"List all equipment I might use to play this sport.", "SportEquip", {}},
        {"What equipment do I need to play this sport?", "SportEquip", {}},

        {"What is the genus of the zebra?", "AnimalClass",
         {{"taxonomy", "genus"}, {"animal", "zebra"}}},
        {"Which family does the giraffe belong to?", "AnimalClass",
         {{"taxonomy", "family"}, {"animal", "giraffe"}}},

        {"Where was the frisbee invented?", "LocIntro", {{"obj", "frisbee"}}},
        {"In which country was the frisbee invented?", "LocIntro", {{"obj", "frisbee"}}},

        {"When was the tv introduced?", "YearIntro", {{"obj", "tv"}}},
        {"In which year was the tv introduced?", "YearIntro", {{"obj", "tv"}}},

        {"List the ingredient of the pizza.", "FoodIngredient", {{"food", "pizza"}}},
        {"What are the ingredients of the pizza?", "FoodIngredient", {{"food", "pizza"}}},

        {"What is the largest animal?", "LargestObj",
         {{"order", "largest"}, {"concept", "animal"}}},
        {"Which is the smallest animal in this image?", "LargestObj",
         {{"order", "smallest"}, {"concept", "animal"}}},

        {"Are all the vehicles road vehicles?", "AreAllThe",
         {{"obj", "vehicle"}, {"concept", "road vehicle"}}},
        {"Are all of the animals mammals?", "AreAllThe",
         {{"obj", "animal"}, {"concept", "mammal"}}},

        {"List the common properties of the right animal and zebra.", "CommProp",
         {{"obj1", "right animal"}, {"concept2", "zebra"}}},
        {"What do the zebra and the giraffe have in common?", "CommProp",
         {{"obj1", "zebra"}, {"concept2", "giraffe"}}},

        {"List the close relatives of the zebra.", "AnimalRelative", {{"animal", "zebra"}}},
        {"What are the close relatives of the zebra?", "AnimalRelative",
         {{"animal", "zebra"}}},

        {"Are the zebra and the giraffe in the same family?", "AnimalSame",
         {{"animal1", "zebra"}, {"animal2", "giraffe"}, {"taxonomy", "family"}}},
        {"Do the zebra and the giraffe share the same kingdom?", "AnimalSame",
         {{"animal1", "zebra"}, {"animal2", "giraffe"}, {"taxonomy", "kingdom"}}},

        {"Which object was introduced earlier, the tv or the laptop?", "FirstIntro",
         {{"obj1", "tv"}, {"concept2", "laptop"}}},
        {"Which was introduced first, the tv or the laptop?", "FirstIntro",
         {{"obj1", "tv"}, {"concept2", "laptop"}}},

        {"List things introduced in the same year as the tv.", "ListSameYear",
         {{"obj", "tv"}}},
        {"What else was introduced in the same year as the tv?", "ListSameYear",
         {{"obj", "tv"}}},

        {"List the common properties of these two images.", "CommProp2Img", {}},
        {"What do these two images have in common?", "CommProp2Img", {}},

        {"Which image is the most related to chef?", "MostRelImg", {{"concept", "chef"}}},
        {"Which image relates most to chef?", "MostRelImg", {{"concept", "chef"}}},
    };
    return cases;
}

} // namespace ahab::test
