package users;

import com.squareup.moshi.JsonAdapter;
import com.squareup.moshi.Moshi;

class Serializer {
    JsonAdapter<User> adapter(Moshi moshi) {
        return moshi.adapter(User.class);
    }
}
